"""Tour of the partition rank function rho_c on small subspace families.

Builds a handful of families over the rationals, sweeps the deficiency
parameter c, and shows how the optimal partition coarsens as c grows.
Also walks one insertion step by hand to show the submodular oracle the
engine minimizes internally.

Run:  python3 demos/partition_rank_tour.py
"""

from __future__ import annotations

from fractions import Fraction

from genrank import (
    FieldSpec,
    SubspaceFamily,
    hat_family,
    insertion_oracle,
    minimize_exhaustive,
    rho,
    rho_bruteforce,
    subspace_from_rows,
)

Q = FieldSpec.rationals()


def line(*coords):
    return subspace_from_rows(Q, len(coords), [coords])


def show(title, family, c_values):
    print(f"\n== {title} ==")
    for c in c_values:
        result = rho(family, c)
        blocks = " | ".join("{" + ",".join(map(str, b)) + "}" for b in result.partition.blocks)
        print(f"  c={str(c):>4}  rho={str(result.value):>5}  partition {blocks}")


def main():
    # Three lines through the origin of K^2: any two of them already span
    # the plane, so at c=1 merging never pays and every member stands alone.
    three_lines = SubspaceFamily(Q, 2, (line(1, 0), line(0, 1), line(1, 1)))
    show("three distinct lines in K^2", three_lines, [Fraction(1, 2), 1, 2])

    # A repeated plane in K^3: the two copies share their span, so merging
    # them saves a full unit of deficiency as soon as c > 0.
    plane = subspace_from_rows(Q, 3, [(1, 0, 0), (0, 1, 0)])
    doubled = SubspaceFamily(Q, 3, (plane, plane, line(0, 0, 1)))
    show("a doubled plane plus a transversal line", doubled, [Fraction(1, 2), 1, 2])

    # The engine agrees with the partition-by-partition brute force.
    for c in (Fraction(1, 2), 1, 2):
        fast = rho(doubled, c)
        slow = rho_bruteforce(doubled, c)
        assert (fast.value, fast.partition) == (slow.value, slow.partition)
    print("\nengine output matches the brute-force scan on all c above")

    # One insertion step, by hand.  The compressed state after the first two
    # members is the pair of axis lines; inserting their sum line asks the
    # oracle which existing members should join the newcomer's block.
    base = SubspaceFamily(Q, 2, (line(1, 0), line(0, 1)))
    g = line(1, 1)
    oracle = insertion_oracle(base, g, 1)
    print("\ninsertion oracle for g = span{(1,1)} against the two axes, c=1:")
    for mask, subset in ((0, "{}"), (1, "{0}"), (2, "{1}"), (3, "{0,1}")):
        print(f"  r({subset:>5}) = {oracle.eval_mask(mask)}")
    best = minimize_exhaustive(oracle)
    print(f"  maximal minimizer: {sorted(best.minimizer) or '{}'}  value {best.value}")
    print("  the empty set wins, so g starts its own block")

    # Hat compression replaces each block by its span; re-solving the
    # compressed family yields all singletons, the fixpoint of compression.
    result = rho(doubled, 1)
    hat = hat_family(doubled, result.partition, 1)
    again = rho(hat, 1)
    print(f"\nhat compression of the doubled-plane family: {len(hat)} members, "
          f"re-solve gives {again.partition.n_blocks} singleton blocks")


if __name__ == "__main__":
    main()
