"""The insertion engine against the brute-force oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from genrank.engine import (
    AUTO_EXHAUSTIVE_LIMIT,
    empty_state,
    insert_subspace,
    insertion_oracle,
    rho,
)
from genrank.errors import InternalInvariantError, MixedAmbient
from genrank.fields import FieldSpec
from genrank.linalg import span_dim, subspace_from_rows
from genrank.partitions import Partition, SubspaceFamily, rho_bruteforce
from genrank.verify import C_VALUES, random_family

Q = FieldSpec.rationals()
FP = FieldSpec.prime(10007)


def line(field, ambient, coords):
    return subspace_from_rows(field, ambient, [[field.from_int(a) for a in coords]])


def test_insertion_oracle_frozen_example():
    base = SubspaceFamily(Q, 2, (line(Q, 2, [1, 0]), line(Q, 2, [0, 1])))
    g = line(Q, 2, [1, 1])
    oracle = insertion_oracle(base, g, 1)
    assert oracle.eval(frozenset()) == 0
    assert oracle.eval({0}) == 1
    assert oracle.eval({1}) == 1
    assert oracle.eval({0, 1}) == 1


def test_insertion_oracle_empty_base():
    base = SubspaceFamily(Q, 3, ())
    g = subspace_from_rows(Q, 3, [[Fraction(1), Fraction(0), Fraction(0)],
                                  [Fraction(0), Fraction(1), Fraction(0)]])
    oracle = insertion_oracle(base, g, 1)
    assert oracle.n == 0
    assert oracle.eval(frozenset()) == 1  # d(g) - c


def test_insertion_oracle_mixed_ambient():
    base = SubspaceFamily(Q, 3, (line(Q, 3, [1, 0, 0]),))
    with pytest.raises(MixedAmbient):
        insertion_oracle(base, line(Q, 4, [1, 0, 0, 0]), 1)
    with pytest.raises(MixedAmbient):
        insertion_oracle(base, line(FP, 3, [1, 0, 0]), 1)


def test_insert_subspace_steps():
    state = empty_state(Q, 2, Fraction(1))
    state = insert_subspace(state, line(Q, 2, [1, 0]), 0)
    assert len(state.hat) == 1 and state.blocks == (frozenset({0}),)
    state = insert_subspace(state, line(Q, 2, [0, 1]), 1)
    assert len(state.hat) == 2
    # the new line joins nobody: all three stay singletons
    state = insert_subspace(state, line(Q, 2, [1, 1]), 2)
    assert len(state.hat) == 3
    assert state.value() == 0
    assert state.partition() == Partition.singletons(3)


def test_insert_duplicate_plane_merges():
    p = subspace_from_rows(Q, 3, [[Fraction(1), Fraction(0), Fraction(0)],
                                  [Fraction(0), Fraction(1), Fraction(0)]])
    state = empty_state(Q, 3, Fraction(1))
    state = insert_subspace(state, p, 0)
    state = insert_subspace(state, p, 1)
    assert len(state.hat) == 1
    assert state.blocks == (frozenset({0, 1}),)
    assert state.value() == 1


def test_rho_matches_bruteforce_sweep():
    rng = random.Random(45)
    for field in (Q, FP):
        for _ in range(12):
            family = random_family(field, rng.randint(3, 7), rng.randint(0, 6), rng)
            for c in C_VALUES:
                brute = rho_bruteforce(family, c)
                for backend in ("exhaustive", "mnp"):
                    fast = rho(family, c, backend=backend)
                    assert fast.value == brute.value
                    assert fast.partition == brute.partition


def test_rho_insertion_order_independent():
    rng = random.Random(46)
    for _ in range(8):
        n = rng.randint(2, 6)
        family = random_family(Q, 5, n, rng)
        reference = rho(family, 1)
        for _ in range(10):
            perm = list(range(n))
            rng.shuffle(perm)
            shuffled = SubspaceFamily(Q, 5, tuple(family[i] for i in perm))
            result = rho(shuffled, 1)
            assert result.value == reference.value
            assert result.partition.relabel(
                {j: perm[j] for j in range(n)}) == reference.partition


def test_rho_empty_family():
    result = rho(SubspaceFamily(Q, 3, ()), 1)
    assert result.value == 0
    assert result.partition.n_blocks == 0


def test_rho_nonpositive_c():
    family = SubspaceFamily(Q, 3, (line(Q, 3, [1, 0, 0]), line(Q, 3, [0, 1, 0])))
    result = rho(family, 0)
    assert result.value == 2
    assert result.partition == Partition.single_block(2)
    result = rho(family, -1)
    assert result.value == 3
    assert result.partition == Partition.single_block(2)
    result = rho(family, Fraction(-1, 2))
    assert result.value == Fraction(5, 2)


def test_rho_duplicates_below_c_stay_separate():
    l = line(Q, 3, [1, 0, 0])
    family = SubspaceFamily(Q, 3, (l, l, l))
    result = rho(family, 2)
    assert result.value == -3
    assert result.partition == Partition.singletons(3)
    brute = rho_bruteforce(family, 2)
    assert (brute.value, brute.partition) == (result.value, result.partition)


def test_rho_accepts_string_and_int_c():
    family = SubspaceFamily(Q, 3, (line(Q, 3, [1, 0, 0]),))
    assert rho(family, "1/2").value == Fraction(1, 2)
    assert rho(family, 1).value == 0


def test_large_ground_set_uses_mnp(monkeypatch):
    import genrank.engine as engine_module

    # force the auto path to pick mnp by shrinking the threshold
    monkeypatch.setattr(engine_module, "AUTO_EXHAUSTIVE_LIMIT", 2)
    rng = random.Random(47)
    family = random_family(Q, 5, 6, rng)
    assert rho(family, 1).value == rho_bruteforce(family, 1).value
    assert AUTO_EXHAUSTIVE_LIMIT == 16  # public constant untouched


def test_engine_state_value_and_hat_family():
    state = empty_state(Q, 3, Fraction(1))
    state = insert_subspace(state, line(Q, 3, [1, 0, 0]), 0)
    state = insert_subspace(state, line(Q, 3, [0, 1, 0]), 1)
    hat = state.hat_family()
    assert len(hat) == 2
    assert state.value() == 0
    assert span_dim(list(hat.members)) == 2


def test_check_hat_rejects_equal_spans_at_or_above_c():
    from genrank.engine import _check_hat

    p = subspace_from_rows(Q, 3, [[Fraction(1), Fraction(0), Fraction(0)],
                                  [Fraction(0), Fraction(1), Fraction(0)]])
    with pytest.raises(InternalInvariantError):
        _check_hat([p, p], Fraction(1))
    l = line(Q, 3, [1, 0, 0])
    _check_hat([l, l], Fraction(2))  # below c: allowed
