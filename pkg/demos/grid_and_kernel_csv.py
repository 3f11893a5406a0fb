"""Emit the dilation grid and a kernel slice as CSV for plotting.

Writes two files into --outdir: grid.csv holds the (q, 1/q)-dilation
orbit of a block of seeds, kernel.csv holds K(z, w0) on a rectangle.
Both are the same artifacts the command line produces; this script just
shows the library calls behind them.
"""
import argparse
import csv
import os

import numpy as np

from qcore import QContext
from qcomplex import qgrid_generate
from qfock import kernel_eval


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, default=0.6)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--outdir", default="demo_out")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    ctx = QContext(q=args.q)

    seeds = [(x, y) for x in (9.8, 10.0, 10.2) for y in (1.2, 1.0, 0.8)]
    grid = qgrid_generate(seeds, args.depth, ctx)
    print(f"{len(seeds)} seeds, depth {args.depth}: "
          f"{grid.count_before_dedup} raw points, {len(grid.points)} after dedup")
    grid_path = os.path.join(args.outdir, "grid.csv")
    with open(grid_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y"])
        w.writerows(grid.points)
    print(f"wrote {grid_path}")

    w0 = 0.5 + 0.0j
    radius = 1.0 / (1.0 - ctx.q)
    kernel_path = os.path.join(args.outdir, "kernel.csv")
    kept = 0
    with open(kernel_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "ReK", "ImK", "absK"])
        for x in np.linspace(-0.9, 0.9, 31):
            for y in np.linspace(-0.9, 0.9, 31):
                z = complex(x, y)
                if abs(z) * abs(w0) >= radius:
                    continue
                val = kernel_eval(z, w0, ctx).value
                w.writerow([repr(float(x)), repr(float(y)),
                            repr(val.real), repr(val.imag), repr(abs(val))])
                kept += 1
    print(f"wrote {kernel_path} ({kept} admissible points)")


if __name__ == "__main__":
    main()
