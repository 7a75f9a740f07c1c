"""figplot command line: curves from sweep CSVs.

Usage: figplot <csv>... --out fig.png [--svg]
Exit codes: 0 ok, 2 schema or empty input, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .core import EmptyInput, PlotSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figplot",
        description="Plot delivery-time-versus-cache-size curves from sweep CSVs",
    )
    parser.add_argument("csv", nargs="+", help="input CSV files (shared schema)")
    parser.add_argument("--out", default="fig.png", help="output image path")
    parser.add_argument("--svg", action="store_true", help="also write an SVG")
    parser.add_argument("--title", default="")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(csv_paths=args.csv, out_path=args.out, svg=args.svg,
                    title=args.title)
    try:
        render(spec)
    except (SchemaError, EmptyInput) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
