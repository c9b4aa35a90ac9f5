"""Draw the LV / unitary / RV split of [T_m, T_m^+] for a register.

    python scripts/unitarity_map.py --base 3 --slots 3
"""
import argparse

from fockdigits.fock_core import RegisterSpec
from fockdigits.translation import commutator_classification, unitarity_region

SYMBOL = {1: "+", 0: ".", -1: "-"}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--slots", type=int, default=3)
    args = p.parse_args()
    spec = RegisterSpec(args.base, args.slots)
    for m in range(spec.slots):
        values = commutator_classification(m, spec, "sum")
        region = unitarity_region(m, spec)
        row = "".join(SYMBOL[values[n]] for n in range(spec.dim))
        print(f"m={m}  {row}  LV={region.lv} unitary={region.unitary} RV={region.rv}")


if __name__ == "__main__":
    main()
