"""
Work from purity: what a state's entropy gap is worth.

A cyclic engine coupled to a single heat bath can convert heat into work by
dumping entropy into a supplied quantum system.  The budget per cycle is

    W = (log2 d - S(rho)) bit-units,      1 bit-unit = k_B T ln2 joules.

This script walks through the basic inventory: pure states are maximal fuel,
maximally mixed states are worthless, and resetting the books costs exactly
what the books are worth.

Run:
    python3 demos/01_work_from_purity.py
"""

import numpy as np

from qihe.qcore import make_density, von_neumann_entropy
from qihe.thermo import ThermalContext, extractable_work, landauer_reset_cost, unit_factor


def main():
    natural = ThermalContext(units="natural")
    room = ThermalContext(temperature=300.0, units="SI")

    print("=== The unit of account ===")
    print(f"1 bit-unit at 300 K = {unit_factor(room):.6e} J (k_B T ln2)")
    print()

    print("=== A ladder of qubit states ===")
    print(f"{'state':<28}{'S (bits)':>10}{'work (bit-units)':>18}{'work at 300 K (J)':>20}")
    states = [
        ("pure |0>", make_density([1.0, 0.0], 2)),
        ("slightly mixed (0.9, 0.1)", make_density(np.diag([0.9, 0.1]).astype(complex), 2)),
        ("coin flip (0.5, 0.5)", make_density(np.eye(2, dtype=complex) / 2, 2)),
    ]
    for label, rho in states:
        s = von_neumann_entropy(rho)
        w_bits = extractable_work(rho, natural).work
        w_joules = extractable_work(rho, room).work
        print(f"{label:<28}{s:>10.4f}{w_bits:>18.4f}{w_joules:>20.6e}")
    print()

    print("=== Bigger registers ===")
    for d in (2, 4, 8):
        pure = make_density([1.0] + [0.0] * (d - 1), d)
        w = extractable_work(pure, natural).work
        print(f"pure state on d={d}: {w:.1f} bit-units (log2 d)")
    print()

    print("=== The reset ledger balances ===")
    rho = make_density(np.diag([0.9, 0.1]).astype(complex), 2)
    rep = extractable_work(rho, natural)
    reset = landauer_reset_cost(rep.entropy_delta, natural)
    print(f"extracting {rep.work:.4f} bit-units moved {rep.entropy_delta:.4f} bits of entropy")
    print(f"erasing that record later costs {reset:.4f} bit-units — no free lunch")


if __name__ == "__main__":
    main()
