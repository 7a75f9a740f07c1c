"""CSV-to-curve plotting.

Reads sweep CSVs sharing the fixed schema (M, delta, proven, r, rho plus
whatever else), draws one curve per (file, r, rho) group with x = cache
size M and y = total delivery time delta, and styles points whose proven
flag is false with a dashed line.  Values are plotted exactly as parsed;
there is no smoothing, sorting, or resampling.  The package reads only the
CSV contract and never imports the producer.
"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

REQUIRED_COLUMNS = ("M", "delta", "proven", "r", "rho")


class SchemaError(Exception):
    """A required CSV column is missing."""


class EmptyInput(Exception):
    """No data rows found across the input files."""


@dataclass(frozen=True)
class CurvePoint:
    m: float
    delta: float
    proven: bool


@dataclass(frozen=True)
class Curve:
    source: str
    key: tuple[str, ...]
    label: str
    points: tuple[CurvePoint, ...]

    def is_non_increasing(self) -> bool:
        deltas = [p.delta for p in self.points]
        return all(a >= b for a, b in zip(deltas, deltas[1:]))


@dataclass
class PlotSpec:
    csv_paths: Sequence[str]
    out_path: str
    svg: bool = False
    group_keys: tuple[str, ...] = ("r", "rho")
    x_label: str = "cache size M (file units)"
    y_label: str = "normalized delivery time"
    dashed_unproven: bool = True
    title: str = ""


def _read_rows(path: str, group_keys: Sequence[str]) -> list[dict]:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [c for c in (*REQUIRED_COLUMNS, *group_keys) if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing columns {missing}")
        return list(reader)


def load_curves(
    csv_paths: Sequence[str], group_keys: Sequence[str] = ("r", "rho")
) -> list[Curve]:
    """One curve per (file, group-key values) bundle, rows kept in file order."""
    curves: list[Curve] = []
    total_rows = 0
    for path in csv_paths:
        rows = _read_rows(path, group_keys)
        total_rows += len(rows)
        grouped: dict[tuple[str, ...], list[CurvePoint]] = {}
        for row in rows:
            key = tuple(row[name] for name in group_keys)
            grouped.setdefault(key, []).append(
                CurvePoint(
                    m=float(row["M"]),
                    delta=float(row["delta"]),
                    proven=row["proven"].strip().lower() == "true",
                )
            )
        for key, points in grouped.items():
            label = ", ".join(f"{n}={v}" for n, v in zip(group_keys, key))
            curves.append(Curve(source=path, key=key, label=label, points=tuple(points)))
    if total_rows == 0:
        raise EmptyInput(f"no data rows in {list(csv_paths)}")
    return curves


def _segments(points: Sequence[CurvePoint]) -> list[tuple[bool, list[CurvePoint]]]:
    """Consecutive runs of equal proven flag; runs share boundary points so
    the drawn curve stays connected."""
    runs: list[tuple[bool, list[CurvePoint]]] = []
    for point in points:
        if runs and runs[-1][0] == point.proven:
            runs[-1][1].append(point)
        else:
            runs.append((point.proven, [point]))
    for prev, (_, run) in zip(runs, runs[1:]):
        run.insert(0, prev[1][-1])
    return runs


def render(spec: PlotSpec):
    """Draw every curve and write the image file(s); returns the figure."""
    curves = load_curves(spec.csv_paths, spec.group_keys)
    for curve in curves:
        if not curve.is_non_increasing():
            print(
                f"warning: curve {curve.label} from {curve.source} is not "
                "non-increasing in M",
                file=sys.stderr,
            )
    fig, ax = plt.subplots(figsize=(7, 5))
    colors = {}
    seen_labels = set()
    cycle = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for curve in curves:
        if curve.label not in colors:
            colors[curve.label] = cycle[len(colors) % len(cycle)]
        color = colors[curve.label]
        label = curve.label if curve.label not in seen_labels else "_nolegend_"
        seen_labels.add(curve.label)
        first = True
        for proven, run in _segments(curve.points):
            style = "-" if proven or not spec.dashed_unproven else "--"
            ax.plot(
                [p.m for p in run],
                [p.delta for p in run],
                linestyle=style,
                marker="o",
                markersize=3,
                color=color,
                label=label if first else "_nolegend_",
            )
            first = False
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend()
    fig.tight_layout()
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out)
    if spec.svg:
        fig.savefig(out.with_suffix(".svg"))
    return fig
