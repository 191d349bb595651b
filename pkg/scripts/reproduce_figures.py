"""Regenerate the three figure datasets plus the mean-field branch scan.

Writes CSV files (and gnuplot companion scripts) into --outdir using the
same grids the acceptance suite checks:

  fig1.csv           two-ion concurrence vs gamma at several bath occupations
  fig2.csv           zero-temperature two-ion concurrence vs gamma
  fig3.csv           pair concurrence vs scaled drive for j = 1, 4, 16, 64
  semiclassical.csv  stable-branch location and relaxation rate vs drive

Run:  python scripts/reproduce_figures.py --outdir data [--jobs 4]
"""

import argparse
import pathlib
import sys

from dickesim.cli import main as cli_main

RUNS = [
    ("fig1.csv", ["fig1", "--gamma-grid", "log:0.01:100:41", "--nbar-grid", "0:3:4"]),
    ("fig2.csv", ["fig2", "--gamma-grid", "log:0.001:1000:121"]),
    ("fig3.csv", ["fig3", "--j-list", "1,4,16,64", "--omega-r-grid", "0.05:3:119"]),
    ("semiclassical.csv", ["semiclassical", "--omega-r-grid", "0.05:2:40"]),
]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="data", help="output directory")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    args = parser.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, cli_args in RUNS:
        path = outdir / name
        rc = cli_main(
            cli_args
            + ["--output", str(path), "--jobs", str(args.jobs), "--gnuplot"]
        )
        if rc != 0:
            return rc
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
