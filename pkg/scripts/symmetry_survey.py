#!/usr/bin/env python3
"""Tabulate the self-isometry group of each builtin sphere.

Usage: python scripts/symmetry_survey.py [--samples 256] [--tol 1e-6]
"""

import argparse
import json

from normgeo import builtin_norm, isometry_group

NAMES = ["euclidean", "p3", "hexagonal", "square", "diamond", "lens"]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=256)
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    rows = []
    for name in NAMES:
        summary = isometry_group(builtin_norm(name), args.samples, args.tol)
        rows.append(summary.to_json())
        order = "continuous" if summary.continuous else summary.order
        print(f"{name:10s} order={order!s:11s} pattern={summary.pattern}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"schema": 1, "groups": rows}, fh, indent=2, sort_keys=True)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
