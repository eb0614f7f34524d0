"""Weak discord of the Werner-singlet family over a (mu, eps) grid.

Writes the sweep CSV and prints the worst deviation from the closed form.

    python3 scripts/fig1_sweep.py --out fig1.csv --jobs 4
"""

import argparse
import sys
import time

from weakdiscord.cli import atomic_write, parse_grid, render_sweep, run_sweep
from weakdiscord.optimize import OptimizerConfig


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--mu-grid", default="0:1:11")
    parser.add_argument("--epsilon-grid", default="0:1:11")
    parser.add_argument("--out", default="fig1.csv")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)

    t0 = time.perf_counter()
    records = run_sweep(parse_grid(args.mu_grid), parse_grid(args.epsilon_grid), OptimizerConfig(), args.jobs)
    atomic_write(args.out, render_sweep(records, "csv"))
    worst = max(abs(r.wqd_numeric - r.wqd_closed_form) for r in records)
    print(f"{len(records)} cells in {time.perf_counter() - t0:.1f}s -> {args.out}")
    print(f"max |numeric - closed form| = {worst:.3e}")
    return 0 if worst <= 1e-6 else 1


if __name__ == "__main__":
    sys.exit(main())
