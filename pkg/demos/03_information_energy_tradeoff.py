"""
One letter, two currencies: classical information versus extractable work.

A transmitter encodes letters a with probabilities p_a into quantum states
sigma_a of a d-dimensional carrier.  Per letter, three quantities compete
for the same log2 d bits of capacity:

    E   energy delivered (purity the receiver can burn),
    C   classical information conveyed (the Holevo limit),
    <S> entropy wasted on mixed letters,

and the books always balance:  E + C + <S> = log2 d.

Blocking letters into repeated words slides along this tradeoff: a word of n
identical letters carries at most one letter's worth of choice but n letters'
worth of purity, so the energy rate climbs toward the ceiling while the
information rate decays.

Run:
    python3 demos/03_information_energy_tradeoff.py
"""

from qihe.thermo import ThermalContext
from qihe.coding import (
    block_alphabet,
    holevo_chi,
    orthogonal_pure_alphabet,
    tradeoff_curve,
    tradeoff_point,
    zero_plus_alphabet,
)


def main():
    ctx = ThermalContext(units="natural")

    print("=== The budget identity ===")
    for name, ab in (
        ("orthogonal {|0>,|1>}", orthogonal_pure_alphabet()),
        ("overlapping {|0>,|+>}", zero_plus_alphabet()),
    ):
        pt = tradeoff_point(ab, ctx)
        total = pt.energy_bits + pt.comm_bits + pt.avg_letter_entropy
        print(
            f"{name:<24} E={pt.energy_bits:.4f}  C={pt.comm_bits:.4f}  "
            f"<S>={pt.avg_letter_entropy:.4f}  sum={total:.4f}  M={pt.capacity_bits:.1f}"
        )
    print()

    print("=== Endpoints of the tradeoff segment ===")
    for name, ab in (
        ("orthogonal", orthogonal_pure_alphabet()),
        ("overlapping", zero_plus_alphabet()),
    ):
        talk, burn = tradeoff_curve(ab, ctx)
        print(f"{name}: all-communication (C,E)={tuple(round(x, 4) for x in talk)}, "
              f"all-energy (C,E)={tuple(round(x, 4) for x in burn)}")
    print()

    print("=== Blocking: paying information to buy energy ===")
    zp = zero_plus_alphabet()
    print(f"{'n':>3}{'C/n (bits)':>14}{'E/n (bit-units)':>18}")
    for n in range(1, 6):
        blocked = block_alphabet(zp, n)
        pt = tradeoff_point(blocked, ctx)
        print(f"{n:>3}{pt.comm_bits / n:>14.4f}{pt.energy_bits / n:>18.4f}")
    print("as n grows the energy rate approaches the ceiling M - <S_a> = 1,")
    print(f"while total information per word stays near chi = {holevo_chi(zp):.4f}")


if __name__ == "__main__":
    main()
