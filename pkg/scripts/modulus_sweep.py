#!/usr/bin/env python3
"""Sweep the modulus of convexity for several norms and write one CSV.

Usage: python scripts/modulus_sweep.py [--out modulus.csv] [--steps 40]
"""

import argparse
import csv
import math

import numpy as np

from normgeo import (EuclideanNorm, LensNorm, PNorm, diamond_norm,
                     hexagonal_norm, modulus_of_convexity)

NORMS = {
    "euclidean": EuclideanNorm(),
    "p3": PNorm(3.0, 2),
    "p1.5": PNorm(1.5, 2),
    "hexagonal": hexagonal_norm(),
    "diamond": diamond_norm(),
    "lens": LensNorm(),
}


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="modulus.csv")
    parser.add_argument("--steps", type=int, default=40)
    parser.add_argument("--resolution", type=int, default=512)
    args = parser.parse_args()

    eps_grid = np.linspace(0.05, 2.0, args.steps)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["norm", "eps", "delta", "round_reference"])
        for name, norm in NORMS.items():
            for eps in eps_grid:
                delta = modulus_of_convexity(norm, float(eps), args.resolution)
                reference = 1.0 - math.sqrt(1.0 - eps * eps / 4.0)
                writer.writerow([name, f"{eps:.6f}", f"{delta:.10f}",
                                 f"{reference:.10f}"])
    print(f"wrote {args.steps * len(NORMS)} rows to {args.out}")


if __name__ == "__main__":
    main()
