"""Command-line entry point: plot <kind> --in CSV... --out FILE."""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import FIGURE_KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plot",
        description="Render a figure from simulation harness CSV files.")
    ap.add_argument("kind", choices=FIGURE_KINDS)
    ap.add_argument("--in", dest="inputs", nargs="+", required=True,
                    metavar="CSV", help="input CSV files")
    ap.add_argument("--out", required=True,
                    help="output image path; PNG and PDF are both written")
    ap.add_argument("--lambda-c", type=float, dest="lambda_c",
                    help="threshold for the vertical line in sweep figures")
    ap.add_argument("--xlabel")
    ap.add_argument("--ylabel")
    ap.add_argument("--title")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(kind=args.kind, inputs=args.inputs, output=args.out,
                      lambda_c=args.lambda_c, xlabel=args.xlabel,
                      ylabel=args.ylabel, title=args.title)
    try:
        written = render(spec)
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 3
    print("wrote " + ", ".join(written))
    return 0


if __name__ == "__main__":
    sys.exit(main())
