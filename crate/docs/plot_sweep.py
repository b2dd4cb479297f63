#!/usr/bin/env python3
"""Render a qcorr sweep CSV as a heat map.

Usage: plot_sweep.py surface.csv [out.png]
"""

import csv
import math
import sys

import matplotlib.pyplot as plt
import numpy as np


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__.strip())
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else None

    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            value = float(row["value"]) if row["value"] else math.nan
            rows.append((float(row["c1"]), float(row["c2"]), value))

    n = int(round(math.sqrt(len(rows))))
    grid = np.array([v for _, _, v in rows]).reshape(n, n)

    fig, ax = plt.subplots()
    im = ax.imshow(
        grid.T,
        origin="lower",
        extent=(-1, 1, -1, 1),
        aspect="equal",
        cmap="viridis",
    )
    fig.colorbar(im, ax=ax)
    ax.set_xlabel("c1")
    ax.set_ylabel("c2")
    if out:
        fig.savefig(out, dpi=150, bbox_inches="tight")
    else:
        plt.show()


if __name__ == "__main__":
    main()
