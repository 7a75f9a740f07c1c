import csv
from pathlib import Path

import pytest

from figplot.core import EmptyInput, PlotSpec, SchemaError, load_curves, render

HEADER = ["H", "r", "K", "L", "N", "M", "t", "rho", "R1", "R2", "d",
          "delta_F", "delta_E", "delta", "proven", "interpolated"]


def write_csv(path: Path, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(HEADER)
        for m, delta, proven, r, rho in rows:
            writer.writerow(["7", r, "21", "6", "21", m, "0", rho, "0", "0",
                             "1", "0", "0", delta, proven, "false"])


def simple_rows(r="2", rho="1"):
    return [("0", "9.5", "true", r, rho),
            ("10", "4.0", "true", r, rho),
            ("21", "0", "true", r, rho)]


def test_load_groups_by_file_and_keys(tmp_path):
    p = tmp_path / "a.csv"
    write_csv(p, simple_rows("2", "1") + simple_rows("5", "1"))
    curves = load_curves([str(p)])
    assert len(curves) == 2
    assert {c.label for c in curves} == {"r=2, rho=1", "r=5, rho=1"}
    assert [pt.m for pt in curves[0].points] == [0.0, 10.0, 21.0]


def test_schema_error_on_missing_columns(tmp_path):
    p = tmp_path / "bad.csv"
    with open(p, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["M", "delta"])  # no proven/r/rho
        writer.writerow(["0", "1.0"])
    with pytest.raises(SchemaError):
        load_curves([str(p)])


def test_empty_input(tmp_path):
    p = tmp_path / "empty.csv"
    with open(p, "w", newline="") as handle:
        csv.writer(handle).writerow(HEADER)
    with pytest.raises(EmptyInput):
        load_curves([str(p)])


def test_single_row_renders_marker(tmp_path):
    p = tmp_path / "one.csv"
    write_csv(p, [("10", "4.0", "true", "2", "1")])
    out = tmp_path / "fig.png"
    fig = render(PlotSpec(csv_paths=[str(p)], out_path=str(out)))
    assert out.exists()
    (line,) = fig.axes[0].lines
    assert list(line.get_xdata()) == [10.0]
    assert line.get_marker() == "o"


def test_duplicate_csvs_share_legend_entry(tmp_path):
    p = tmp_path / "a.csv"
    write_csv(p, simple_rows())
    out = tmp_path / "fig.png"
    fig = render(PlotSpec(csv_paths=[str(p), str(p)], out_path=str(out)))
    ax = fig.axes[0]
    labels = [t.get_text() for t in ax.get_legend().get_texts()]
    assert labels == ["r=2, rho=1"]
    assert len(ax.lines) == 2  # overlapping curves, one per file


def test_unproven_points_drawn_dashed(tmp_path):
    p = tmp_path / "mixed.csv"
    write_csv(p, [("0", "9.0", "false", "5", "1"),
                  ("10", "4.0", "false", "5", "1"),
                  ("18", "1.0", "true", "5", "1"),
                  ("21", "0", "true", "5", "1")])
    fig = render(PlotSpec(csv_paths=[str(p)], out_path=str(tmp_path / "f.png")))
    styles = {line.get_linestyle() for line in fig.axes[0].lines}
    assert styles == {"--", "-"}


def test_plotted_values_equal_csv_values(tmp_path):
    rows = [("0", "9.5", "false", "5", "2"),
            ("7", "6.25", "false", "5", "2"),
            ("14", "2.125", "true", "5", "2"),
            ("21", "0", "true", "5", "2")]
    p = tmp_path / "vals.csv"
    write_csv(p, rows)
    fig = render(PlotSpec(csv_paths=[str(p)], out_path=str(tmp_path / "f.png")))
    drawn = []
    for line in fig.axes[0].lines:
        pts = list(zip(line.get_xdata(), line.get_ydata()))
        if drawn and pts and drawn[-1] == pts[0]:
            pts = pts[1:]  # segment boundary repeats the joining point
        drawn.extend(pts)
    expect = [(float(m), float(d)) for m, d, *_ in rows]
    assert drawn == expect


def test_non_monotone_curve_warns_but_draws(tmp_path, capsys):
    p = tmp_path / "zigzag.csv"
    write_csv(p, [("0", "1.0", "true", "2", "1"),
                  ("10", "2.0", "true", "2", "1")])
    out = tmp_path / "f.png"
    render(PlotSpec(csv_paths=[str(p)], out_path=str(out)))
    assert out.exists()
    assert "not non-increasing" in capsys.readouterr().err


def test_svg_output(tmp_path):
    p = tmp_path / "a.csv"
    write_csv(p, simple_rows())
    out = tmp_path / "fig.png"
    render(PlotSpec(csv_paths=[str(p)], out_path=str(out), svg=True))
    assert out.exists()
    assert out.with_suffix(".svg").exists()


def test_cli_exit_codes(tmp_path):
    from figplot.cli import main

    good = tmp_path / "good.csv"
    write_csv(good, simple_rows())
    assert main([str(good), "--out", str(tmp_path / "ok.png")]) == 0

    bad = tmp_path / "bad.csv"
    with open(bad, "w", newline="") as handle:
        csv.writer(handle).writerow(["M", "delta"])
    assert main([str(bad), "--out", str(tmp_path / "no.png")]) == 2
