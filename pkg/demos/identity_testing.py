"""Deterministic rank of structured symbolic matrices, without randomness.

A row of an R2 instance is the symbolic vector (u.x) v - (v.x) u; an Rk
instance generalizes to antisymmetrized rank-one k-tensors contracted with
k-1 symbolic points.  The generic rank of such a matrix equals a partition
rank of the family of spans, so it can be computed exactly instead of by
plugging in random points.  This script does both and compares.

Run:  python3 demos/identity_testing.py
"""

from __future__ import annotations

import random

from genrank import (
    DEFAULT_PRIME,
    FieldSpec,
    R2Instance,
    RkInstance,
    evaluate_r2_matrix,
    evaluate_rk_matrix,
    r2_family,
    r2_rank,
    r2_to_prime,
    randomized_rank,
    rk_rank,
    rk_to_prime,
    sample_vector,
    split_to_planes,
    rho,
)

Q = FieldSpec.rationals()


def main():
    # Four pairs in K^3.  The first three live in the same plane z=0, so
    # their evaluated rows are forced into a single line inside that plane:
    # three rows, but only one dimension of generic content.
    inst = R2Instance(Q, 3, (
        ((1, 0, 0), (0, 1, 0)),
        ((1, 1, 0), (1, 2, 0)),
        ((2, 1, 0), (0, 3, 0)),
        ((0, 0, 1), (1, 0, 0)),
    ))
    family, dropped = r2_family(inst)
    det = r2_rank(inst)
    print(f"R2 instance: {len(inst.rows)} rows, {len(family)} nondegenerate, "
          f"dropped {dropped or 'none'}")
    print(f"deterministic generic rank: {det}")

    # Cross-check by actually evaluating at random points mod a large prime.
    prime_inst = r2_to_prime(inst, DEFAULT_PRIME)
    rand = randomized_rank(
        lambda r: evaluate_r2_matrix(prime_inst, sample_vector(prime_inst.field, 3, r)),
        prime_inst.field, trials=5, rng=random.Random(7))
    print(f"randomized evaluation rank:  {rand}")
    assert det == rand

    # The first three planes coincide, so the optimal partition merges them.
    result = rho(family, 1)
    print(f"optimal partition of the span family: {list(result.partition.blocks)}")

    # A k=3 instance in K^4: two tensors sharing two factors, one independent.
    tensors = (
        ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)),
        ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1)),
        ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    )
    rk_inst = RkInstance(Q, 4, 3, tensors)
    det_k = rk_rank(rk_inst)
    prime_rk = rk_to_prime(rk_inst, DEFAULT_PRIME)
    rand_k = randomized_rank(
        lambda r: evaluate_rk_matrix(
            prime_rk, [sample_vector(prime_rk.field, 4, r) for _ in range(2)]),
        prime_rk.field, trials=5, rng=random.Random(11))
    print(f"\nRk instance (k=3): deterministic {det_k}, randomized {rand_k}")
    assert det_k == rand_k

    # Any family can be split into planes without changing its c=1 value,
    # which is how higher-dimensional members reduce to the R2 shape.
    planes = split_to_planes(family)
    print(f"\nsplit_to_planes: {len(family)} members -> {len(planes)} planes, "
          f"rho_1 {rho(family, 1).value} -> {rho(planes, 1).value}")


if __name__ == "__main__":
    main()
