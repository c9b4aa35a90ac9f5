"""Worst-case residuals of the roots-of-unity floor formula over an (n, k) grid.

Used to confirm the integer-distance and imaginary tolerances have slack:

    python scripts/floor_residual_sweep.py --max-n 5000 --max-k 64
"""
import argparse

import numpy as np

from fockdigits.multiboson import floor_residue_value
from fockdigits.tolerances import DEFAULT


def sweep(max_n, max_k):
    n = np.arange(max_n + 1)
    rows = []
    for k in range(1, max_k + 1):
        value, imag = floor_residue_value(n, k)
        dist = np.abs(value - n // k)
        i = int(np.argmax(dist))
        rows.append((k, float(dist[i]), int(n[i]), float(np.abs(imag).max())))
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=5000)
    p.add_argument("--max-k", type=int, default=64)
    p.add_argument("--every", type=int, default=8, help="print every k-th row")
    args = p.parse_args()

    rows = sweep(args.max_n, args.max_k)
    print(f"{'k':>5} {'max |value - floor|':>22} {'at n':>7} {'max |imag|':>12}")
    for k, dist, at, imag in rows:
        if k % args.every == 0 or k == 1:
            print(f"{k:5d} {dist:22.3e} {at:7d} {imag:12.3e}")
    worst = max(r[1] for r in rows)
    worst_imag = max(r[3] for r in rows)
    print(f"\nworst real residual {worst:.3e} (tolerance {DEFAULT.integer_distance:g}, "
          f"slack x{DEFAULT.integer_distance / max(worst, 1e-300):.0e})")
    print(f"worst imaginary residual {worst_imag:.3e} (tolerance {DEFAULT.imaginary:g})")


if __name__ == "__main__":
    main()
