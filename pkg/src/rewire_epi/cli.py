"""Command-line entry point.

Usage: rewire-epi <kind> [--config FILE] [--seed N] [--out-dir DIR]
[--threads N] [parameter overrides].  Config files are INI-style with an
[experiment] section; command-line flags override file values.
"""

from __future__ import annotations

import argparse
import configparser
import sys

from .experiments import (
    EXPERIMENT_KINDS,
    ConfigError,
    ExperimentConfig,
    run_experiment,
)

_FLOAT_FIELDS = ("mu", "lam", "gamma", "omega", "alpha", "init_frac", "eps")
_INT_FIELDS = ("n", "reps", "seed", "threads")
_GRID_FIELDS = ("lambda_grid", "omega_grid", "mu_grid", "alpha_grid")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rewire-epi",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("kind", choices=EXPERIMENT_KINDS)
    ap.add_argument("--config", help="INI config file with an [experiment] section")
    ap.add_argument("--out-dir", dest="out_dir")
    ap.add_argument("--mode", choices=["uniform_all", "susceptible_only",
                                       "non_infectious", "recovered_only"])
    for name in _INT_FIELDS:
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, dest=name)
    for name in _FLOAT_FIELDS:
        ap.add_argument(f"--{name.replace('_', '-')}", type=float, dest=name)
    for name in _GRID_FIELDS:
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name,
                        help="comma-separated values")
    return ap


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigError(f"bad grid value: {text!r}") from e


def load_config(path: str, kind: str) -> ExperimentConfig:
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise ConfigError(f"cannot read config file {path}")
    if not cp.has_section("experiment"):
        raise ConfigError(f"{path}: missing [experiment] section")
    sec = cp["experiment"]
    cfg = ExperimentConfig(kind=sec.get("kind", kind))
    for key in sec:
        if key == "kind":
            continue
        if key in _INT_FIELDS:
            setattr(cfg, key, sec.getint(key))
        elif key in _FLOAT_FIELDS:
            setattr(cfg, key, sec.getfloat(key))
        elif key in _GRID_FIELDS:
            setattr(cfg, key, _parse_grid(sec[key]))
        elif key in ("out_dir", "mode"):
            setattr(cfg, key, sec[key])
        else:
            raise ConfigError(f"{path}: unknown key {key!r}")
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            cfg = load_config(args.config, args.kind)
            cfg.kind = args.kind
        else:
            cfg = ExperimentConfig(kind=args.kind)
        for name in _INT_FIELDS + _FLOAT_FIELDS + ("out_dir", "mode"):
            v = getattr(args, name, None)
            if v is not None:
                setattr(cfg, name, v)
        for name in _GRID_FIELDS:
            v = getattr(args, name, None)
            if v is not None:
                setattr(cfg, name, _parse_grid(v))
        cfg.validate()
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    try:
        manifest = run_experiment(cfg)
    except Exception as e:
        print(f"runtime failure: {e}", file=sys.stderr)
        return 3
    print(f"wrote {len(manifest['files'])} files to {cfg.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
