#!/usr/bin/env python3
"""Generate the 7x21 connectivity-comparison CSVs (r=5 versus r=2).

Writes one CSV per fronthaul rate plus a gap table; these files feed the
figplot package, which draws the delivery-time-versus-cache-size curves.
"""

import argparse
import sys
from pathlib import Path

from pcfran.cli import main as cli_main


def run(out_dir: Path, rhos) -> int:
    argv = ["compare", "--H", "7", "--rA", "5", "--rB", "2", "--N", "21",
            "--out", str(out_dir)]
    for rho in rhos:
        argv += ["--rho", rho]
    return cli_main(argv)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/comparison")
    parser.add_argument("--rho", action="append",
                        help="repeatable; default 1/2, 1, 2, 10")
    args = parser.parse_args()
    rhos = args.rho or ["1/2", "1", "2", "10"]
    sys.exit(run(Path(args.out), rhos))
