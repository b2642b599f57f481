import pytest

from figure_plots.cli import build_parser, main


def test_parser_requires_inputs_and_output():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["yd_compare"])
    args = build_parser().parse_args(
        ["yd_compare", "--in", "a.csv", "b.csv", "--out", "fig.png"])
    assert args.inputs == ["a.csv", "b.csv"]
    assert args.out == "fig.png"


def test_parser_rejects_unknown_kind():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["sculpture", "--in", "a.csv",
                                   "--out", "x.png"])


def test_main_success(tau0_csv, tmp_path, capsys):
    out = tmp_path / "fig.png"
    code = main(["tau0_vs_giant", "--in", str(tau0_csv),
                 "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert out.with_suffix(".pdf").exists()
    assert "wrote" in capsys.readouterr().out


def test_main_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("mu,wrong\n1,2\n")
    code = main(["tau0_vs_giant", "--in", str(bad),
                 "--out", str(tmp_path / "fig.png")])
    assert code == 2
    assert "missing column" in capsys.readouterr().err


def test_main_io_error_exit_code(tau0_csv, tmp_path):
    code = main(["tau0_vs_giant", "--in", str(tau0_csv),
                 "--out", "/nonexistent-dir/deep/fig.png"])
    assert code == 3
