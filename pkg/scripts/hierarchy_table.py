"""Tabulate QD, WQD, SyWQD, SyQD and SQD for a few seeded states.

    python3 scripts/hierarchy_table.py --states 5 --eps 0.5 --x 1.0
"""

import argparse

from weakdiscord.info import quantum_mutual_info
from weakdiscord.quantifiers import discord, super_discord, sym_discord, sym_weak_discord, weak_discord
from weakdiscord.states import random_density, state_from_spec


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--states", type=int, default=5, help="number of random states")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--eps", type=float, default=0.5)
    parser.add_argument("--x", type=float, default=1.0)
    args = parser.parse_args(argv)

    named = [("werner:mu=0.5", state_from_spec("werner:mu=0.5")), ("qc:a=0/+", state_from_spec("qc:a=0/+"))]
    named += [(f"random seed={args.seed + i}", random_density(2, 2, seed=args.seed + i)) for i in range(args.states)]

    cols = ("I", "QD", "WQD", "SyWQD", "SyQD", "SQD")
    print(f"{'state':<22}" + "".join(f"{c:>10}" for c in cols))
    for name, rho in named:
        row = (
            quantum_mutual_info(rho),
            discord(rho).value,
            weak_discord(rho, args.eps).value,
            sym_weak_discord(rho, args.eps, args.eps).value,
            sym_discord(rho).value,
            super_discord(rho, args.x).value,
        )
        print(f"{name:<22}" + "".join(f"{v:>10.6f}" for v in row))


if __name__ == "__main__":
    main()
