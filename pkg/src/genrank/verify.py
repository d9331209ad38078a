"""Seeded self-check suites behind the `verify` subcommand.

Each suite re-tests the invariants its module promises on freshly generated
random instances.  All randomness flows from one master seed (per-suite seeds
are derived in a fixed order), so a failing run reproduces exactly.  Suites
are sized to finish in a few seconds; the heavyweight sweeps live in the
acceptance tests, which reuse the generators defined here.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .engine import empty_state, insert_subspace, insertion_oracle, rho
from .errors import GenrankError
from .fields import DEFAULT_PRIME, FieldSpec
from .linalg import (
    Matrix,
    Subspace,
    determinant,
    dot,
    kernel_in_subspace,
    nullspace,
    rank,
    rref,
    sample_vector,
    span_dim,
    subspace_from_rows,
)
from .partitions import (
    Partition,
    SpanRankCache,
    SubspaceFamily,
    hat_family,
    is_refinement,
    restrict_partition,
    rho_bruteforce,
    rho_of_partition,
)
from .rigidity import Graph, laman_oracle, required_rank, rigidity_rank_2d, rigidity_report
from .sfm import (
    SubmodularOracle,
    maximality_closure,
    minimize_exhaustive,
    minimize_polynomial,
    verify_submodular,
)
from .symbolic import (
    R2Instance,
    RkInstance,
    evaluate_r2_matrix,
    evaluate_rk_matrix,
    intersect_with_codim_k,
    intersect_with_hyperplane,
    r2_rank,
    r2_to_prime,
    randomized_rank,
    rk_rank,
    rk_to_prime,
    split_to_planes,
)

SUITE_NAMES = ("linalg", "partitions", "sfm", "engine", "symbolic", "rigidity")

# The c values every sweep exercises: below, at, between and above typical dims.
C_VALUES = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))


# -- generators (also used by the acceptance tests) ---------------------------

def test_fields() -> tuple[FieldSpec, FieldSpec]:
    return FieldSpec.rationals(), FieldSpec.prime(10007)


def random_subspace(field: FieldSpec, ambient_dim: int, rng: random.Random,
                    max_dim: int = 3, bound: int = 5) -> Subspace:
    """A nonzero subspace spanned by up to max_dim random vectors."""
    target = rng.randint(1, max_dim)
    while True:
        rows = [sample_vector(field, ambient_dim, rng, bound) for _ in range(target)]
        if any(any(a != 0 for a in row) for row in rows):
            return subspace_from_rows(field, ambient_dim, rows)


def random_family(field: FieldSpec, ambient_dim: int, size: int, rng: random.Random,
                  max_dim: int = 3, dup_rate: float = 0.15, bound: int = 5,
                  min_dim: int = 1) -> SubspaceFamily:
    """A random family; with probability dup_rate a member repeats an earlier one."""
    members: list[Subspace] = []
    for _ in range(size):
        if members and rng.random() < dup_rate:
            members.append(rng.choice(members))
        else:
            while True:
                s = random_subspace(field, ambient_dim, rng, max_dim, bound)
                if s.dim >= min_dim:
                    members.append(s)
                    break
    return SubspaceFamily(field, ambient_dim, tuple(members))


def random_partition(n: int, rng: random.Random) -> Partition:
    """A uniform-ish random set partition of {0..n-1} (random block assignment)."""
    labels = [rng.randrange(n) for _ in range(n)]
    blocks: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        blocks.setdefault(lab, []).append(i)
    return Partition.from_blocks(blocks.values())


def random_graph(n: int, rng: random.Random, edge_prob: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob]
    return Graph.from_edges(n, edges)


def graphs_up_to_iso(n: int) -> list[Graph]:
    """Every simple graph on n labeled vertices, one representative per iso class.

    Walks edge-set bitmasks in increasing order; each unseen mask starts a new
    class and its whole orbit under vertex permutations is marked seen.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    index = {pair: i for i, pair in enumerate(pairs)}
    moves = []
    for perm in itertools.permutations(range(n)):
        moves.append(tuple(index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs))
    reps = []
    seen: set[int] = set()
    for mask in range(1 << len(pairs)):
        if mask in seen:
            continue
        reps.append(mask)
        for move in moves:
            image = 0
            m = mask
            while m:
                low = m & -m
                image |= 1 << move[low.bit_length() - 1]
                m ^= low
            seen.add(image)
    return [Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            for mask in reps]


def random_r2_instance(field: FieldSpec, ambient_dim: int, n_rows: int,
                       rng: random.Random, bound: int = 5) -> R2Instance:
    rows = tuple(
        (sample_vector(field, ambient_dim, rng, bound),
         sample_vector(field, ambient_dim, rng, bound))
        for _ in range(n_rows))
    return R2Instance(field, ambient_dim, rows)


def random_rk_instance(field: FieldSpec, ambient_dim: int, order: int, n_tensors: int,
                       rng: random.Random, bound: int = 5) -> RkInstance:
    tensors = tuple(
        tuple(sample_vector(field, ambient_dim, rng, bound) for _ in range(order))
        for _ in range(n_tensors))
    return RkInstance(field, ambient_dim, order, tensors)


def coverage_oracle(n: int, rng: random.Random, universe: int = 10) -> SubmodularOracle:
    """Random coverage-minus-modular function: submodular by construction."""
    sets = [frozenset(j for j in range(universe) if rng.random() < 0.4) for _ in range(n)]
    weights = [Fraction(rng.randint(0, 8), rng.randint(1, 4)) for _ in range(n)]

    def fn(subset: frozenset[int]) -> Fraction:
        covered = set()
        for i in subset:
            covered |= sets[i]
        return Fraction(len(covered)) - sum((weights[i] for i in subset), Fraction(0))

    return SubmodularOracle(n, fn)


def all_minimizing_masks(oracle: SubmodularOracle) -> tuple[Fraction, list[int]]:
    best = oracle.eval_mask(0)
    masks = [0]
    for mask in range(1, 1 << oracle.n):
        v = oracle.eval_mask(mask)
        if v < best:
            best, masks = v, [mask]
        elif v == best:
            masks.append(mask)
    return best, masks


def hyperplane_intersection_dim(family: SubspaceFamily, x) -> int:
    """dim span of the union of all member-hyperplane intersections."""
    vectors = []
    for f in family:
        vectors.extend(intersect_with_hyperplane(f, x).vectors)
    if not vectors:
        return 0
    return rank(Matrix.from_rows(family.field, vectors, family.ambient_dim))


def codim_intersection_dim(family: SubspaceFamily, constraints: Matrix) -> int:
    vectors = []
    for f in family:
        vectors.extend(intersect_with_codim_k(f, constraints).vectors)
    if not vectors:
        return 0
    return rank(Matrix.from_rows(family.field, vectors, family.ambient_dim))


# -- suite plumbing ------------------------------------------------------------

class _Check:
    """Collects failure descriptions; caps how many are kept per suite."""

    def __init__(self, cap: int = 10):
        self.failures: list[str] = []
        self._cap = cap
        self._dropped = 0

    def ok(self, condition: bool, message: str):
        if not condition:
            if len(self.failures) < self._cap:
                self.failures.append(message)
            else:
                self._dropped += 1

    def done(self) -> list[str]:
        if self._dropped:
            self.failures.append(f"... and {self._dropped} more failures")
        return self.failures


def suite_linalg(seed: int) -> list[str]:
    rng = random.Random(seed)
    check = _Check()
    for field in test_fields():
        for trial in range(20):
            nrows = rng.randint(1, 5)
            ncols = rng.randint(1, 6)
            m = Matrix.from_rows(
                field, [sample_vector(field, ncols, rng) for _ in range(nrows)], ncols)
            reduced, rk = rref(m)
            again, rk2 = rref(reduced)
            check.ok(again == reduced and rk2 == rk,
                     f"rref not idempotent ({field}, trial {trial})")
            check.ok(rk == reduced.nrows, f"rref kept zero rows (trial {trial})")
            check.ok(rank(m) == rank(m.transpose()),
                     f"row rank != column rank (trial {trial})")
            kernel = nullspace(m)
            check.ok(rk + len(kernel) == ncols, f"rank-nullity fails (trial {trial})")
            for y in kernel:
                check.ok(all(dot(field, row, y) == 0 for row in m.rows),
                         f"nullspace vector not annihilated (trial {trial})")
        for trial in range(12):
            n = rng.randint(1, 4)
            rows = [sample_vector(field, n, rng) for _ in range(n)]
            if n >= 2:
                singular = list(rows)
                singular[-1] = singular[0]
                check.ok(determinant(field, singular) == 0,
                         f"determinant of repeated-row matrix nonzero (trial {trial})")
                swapped = list(rows)
                swapped[0], swapped[1] = swapped[1], swapped[0]
                check.ok(determinant(field, swapped) == field.neg(determinant(field, rows)),
                         f"determinant not alternating (trial {trial})")
            eye = [tuple(field.one() if i == j else field.zero() for j in range(n))
                   for i in range(n)]
            check.ok(determinant(field, eye) == field.one(),
                     f"determinant of identity != 1 (trial {trial})")
        for trial in range(10):
            ambient = rng.randint(3, 6)
            f = random_subspace(field, ambient, rng)
            for row in f.basis.rows:
                check.ok(f.contains(row), f"subspace misses its own basis row (trial {trial})")
            combo = [field.zero()] * ambient
            for row in f.basis.rows:
                coef = field.from_int(rng.randint(-3, 3))
                combo = [field.add(a, field.mul(coef, b)) for a, b in zip(combo, row)]
            check.ok(f.contains(tuple(combo)), f"combination not contained (trial {trial})")
            k = rng.randint(1, 2)
            constraints = Matrix.from_rows(
                field, [sample_vector(field, ambient, rng) for _ in range(k)], ambient)
            inter = kernel_in_subspace(f, constraints)
            mdots = [[dot(field, crow, brow) for brow in f.basis.rows]
                     for crow in constraints.rows]
            expected = f.dim - rank(Matrix.from_rows(field, mdots, f.dim))
            check.ok(inter.dim == expected,
                     f"kernel_in_subspace dimension off (trial {trial})")
            for v in inter.basis.rows:
                check.ok(f.contains(v) and all(dot(field, c, v) == 0 for c in constraints.rows),
                         f"kernel_in_subspace vector invalid (trial {trial})")
    for field in test_fields():
        for trial in range(20):
            a = sample_vector(field, 1, rng)[0]
            check.ok(field.parse(field.format(a)) == a, f"parse/format round trip (trial {trial})")
            if a != 0:
                check.ok(field.mul(a, field.inv(a)) == field.one(),
                         f"inverse fails (trial {trial})")
    return check.done()


def suite_partitions(seed: int) -> list[str]:
    rng = random.Random(seed)
    check = _Check()
    for field in test_fields():
        for trial in range(8):
            n = rng.randint(1, 6)
            ambient = rng.randint(3, 6)
            family = random_family(field, ambient, n, rng)
            dims = [f.dim for f in family]
            total_span = span_dim(list(family.members))
            cache = SpanRankCache(list(family.members))
            for mask in range(1 << n):
                direct = span_dim([family[i] for i in range(n) if mask >> i & 1]) if mask else 0
                check.ok(cache.rank(mask) == direct,
                         f"span cache disagrees with direct span (trial {trial}, mask {mask})")
            for c in C_VALUES:
                singles = rho_of_partition(family, Partition.singletons(n), c)
                check.ok(singles == sum(Fraction(d) - c for d in dims),
                         f"singleton value wrong (trial {trial}, c={c})")
                whole = rho_of_partition(family, Partition.single_block(n), c)
                check.ok(whole == Fraction(total_span) - c,
                         f"single-block value wrong (trial {trial}, c={c})")
                result = rho_bruteforce(family, c)
                check.ok(result.value <= singles and result.value <= whole,
                         f"brute force above a trivial partition (trial {trial}, c={c})")
                for _ in range(5):
                    pi = random_partition(n, rng)
                    check.ok(result.value <= rho_of_partition(family, pi, c),
                             f"brute force not minimal (trial {trial}, c={c})")
                hat = hat_family(family, result.partition, c)
                check.ok(len(hat) == result.partition.n_blocks,
                         f"hat size != block count (trial {trial}, c={c})")
                for block, member in zip(result.partition.blocks, hat.members):
                    direct = subspace_from_rows(
                        field, ambient,
                        [row for i in block for row in family[i].basis.rows])
                    check.ok(member == direct,
                             f"hat member is not its block span (trial {trial}, c={c})")
    for trial in range(15):
        n = rng.randint(2, 7)
        pi = random_partition(n, rng)
        check.ok(is_refinement(Partition.singletons(n), pi),
                 f"singletons not a refinement (trial {trial})")
        check.ok(is_refinement(pi, Partition.single_block(n)),
                 f"partition does not refine the single block (trial {trial})")
        check.ok(is_refinement(pi, pi), f"refinement not reflexive (trial {trial})")
        subset = frozenset(i for i in range(n) if rng.random() < 0.6)
        if subset:
            restricted = restrict_partition(pi, subset)
            check.ok(restricted.ground == subset,
                     f"restriction ground set wrong (trial {trial})")
            for block in restricted.blocks:
                check.ok(any(set(block) <= set(b) for b in pi.blocks),
                         f"restricted block not inside an original block (trial {trial})")
    return check.done()


def suite_sfm(seed: int) -> list[str]:
    rng = random.Random(seed)
    check = _Check()
    for trial in range(12):
        n = rng.randint(2, 8)
        oracle = coverage_oracle(n, rng)
        check.ok(verify_submodular(oracle, trials=100, rng=rng),
                 f"coverage oracle not submodular (trial {trial})")
        exact = minimize_exhaustive(oracle)
        wolfe = minimize_polynomial(oracle)
        check.ok(exact.value == wolfe.value,
                 f"min-norm-point value differs from exhaustive (trial {trial})")
        check.ok(exact.minimizer == wolfe.minimizer,
                 f"maximal minimizers differ (trial {trial})")
        if n <= 6:
            best, masks = all_minimizing_masks(oracle)
            mask_set = set(masks)
            for a in masks:
                for b in masks:
                    check.ok((a | b) in mask_set and (a & b) in mask_set,
                             f"minimizers not a lattice (trial {trial})")
            union = 0
            for m in masks:
                union |= m
            check.ok(exact.minimizer == frozenset(
                i for i in range(n) if union >> i & 1),
                f"exhaustive minimizer is not the union of minimizers (trial {trial})")
        closure = maximality_closure(oracle, exact.minimizer)
        check.ok(closure == exact.minimizer,
                 f"maximal minimizer not closed (trial {trial})")
        orders = [list(range(n)) for _ in range(5)]
        for order in orders:
            rng.shuffle(order)
        small = min(exact.minimizer) if exact.minimizer else None
        start = frozenset([small]) if small is not None and \
            oracle.eval(frozenset([small])) == exact.value else exact.minimizer
        results = {maximality_closure(oracle, start, order) for order in orders}
        check.ok(len(results) == 1, f"closure depends on scan order (trial {trial})")
    return check.done()


def suite_engine(seed: int) -> list[str]:
    rng = random.Random(seed)
    check = _Check()
    for field in test_fields():
        for trial in range(6):
            n = rng.randint(1, 6)
            ambient = rng.randint(3, 7)
            family = random_family(field, ambient, n, rng)
            for c in C_VALUES:
                brute = rho_bruteforce(family, c)
                for backend in ("exhaustive", "mnp"):
                    fast = rho(family, c, backend=backend)
                    check.ok(fast.value == brute.value and fast.partition == brute.partition,
                             f"engine/{backend} disagrees with brute force "
                             f"({field}, trial {trial}, c={c})")
                perm = list(range(n))
                rng.shuffle(perm)
                shuffled = SubspaceFamily(field, ambient,
                                          tuple(family[i] for i in perm))
                relabeled = rho(shuffled, c).partition.relabel(
                    {j: perm[j] for j in range(n)})
                check.ok(relabeled == brute.partition,
                         f"insertion order changed the partition (trial {trial}, c={c})")
            check.ok(rho(family, 0).value == Fraction(span_dim(list(family.members))),
                     f"c=0 shortcut wrong (trial {trial})")
            check.ok(rho(family, -1).value == Fraction(span_dim(list(family.members))) + 1,
                     f"c=-1 shortcut wrong (trial {trial})")
            # stepwise fold: hat discipline and oracle consistency at every insertion
            c = Fraction(1)
            state = empty_state(field, ambient, c)
            for i, member in enumerate(family):
                if state.hat:
                    oracle = insertion_oracle(state.hat_family(), member, c)
                    check.ok(verify_submodular(oracle, trials=50, rng=rng),
                             f"insertion oracle not submodular (trial {trial}, step {i})")
                    joint = SubspaceFamily(field, ambient, state.hat + (member,))
                    check.ok(minimize_exhaustive(oracle).value == rho_bruteforce(joint, c).value,
                             f"oracle minimum != joint partition rank (trial {trial}, step {i})")
                state = insert_subspace(state, member, i)
                hat_check = rho_bruteforce(state.hat_family(), c)
                check.ok(hat_check.partition.n_blocks == len(state.hat),
                         f"hat not all singletons (trial {trial}, step {i})")
    empty = SubspaceFamily(FieldSpec.rationals(), 3, ())
    result = rho(empty, 1)
    check.ok(result.value == 0 and result.partition.n_blocks == 0,
             "empty family does not give (0, empty partition)")
    return check.done()


def suite_symbolic(seed: int) -> list[str]:
    rng = random.Random(seed)
    check = _Check()
    rational, small_prime = test_fields()
    for trial in range(8):
        ambient = rng.randint(3, 6)
        inst = random_r2_instance(rational, ambient, rng.randint(1, 6), rng)
        det_rank = r2_rank(inst)
        prime_inst = r2_to_prime(inst, DEFAULT_PRIME)
        rand_rank = randomized_rank(
            lambda r: evaluate_r2_matrix(
                prime_inst, sample_vector(prime_inst.field, ambient, r)),
            prime_inst.field, trials=3, rng=rng)
        check.ok(det_rank == rand_rank,
                 f"r2 deterministic {det_rank} != randomized {rand_rank} (trial {trial})")
    for trial in range(4):
        ambient = rng.randint(4, 6)
        inst = random_rk_instance(rational, ambient, 3, rng.randint(1, 4), rng)
        det_rank = rk_rank(inst)
        prime_inst = rk_to_prime(inst, DEFAULT_PRIME)
        rand_rank = randomized_rank(
            lambda r: evaluate_rk_matrix(
                prime_inst,
                [sample_vector(prime_inst.field, ambient, r) for _ in range(2)]),
            prime_inst.field, trials=3, rng=rng)
        check.ok(det_rank == rand_rank,
                 f"rk deterministic {det_rank} != randomized {rand_rank} (trial {trial})")
    for field in (rational, small_prime):
        for trial in range(10):
            ambient = rng.randint(3, 6)
            f = random_subspace(field, ambient, rng)
            x = sample_vector(field, ambient, rng)
            if all(a == 0 for a in x):
                continue
            basis = intersect_with_hyperplane(f, x)
            exact = kernel_in_subspace(f, Matrix.from_rows(field, [x], ambient))
            check.ok(basis.as_subspace() == exact,
                     f"hyperplane basis != kernel (field {field}, trial {trial})")
            for w in basis.vectors:
                check.ok(dot(field, w, x) == 0 and f.contains(w),
                         f"hyperplane w-vector invalid (trial {trial})")
        for trial in range(6):
            ambient = rng.randint(5, 7)
            k = rng.randint(1, 2)
            f = random_subspace(field, ambient, rng, max_dim=4)
            if f.dim <= k:
                continue
            constraints = Matrix.from_rows(
                field, [sample_vector(field, ambient, rng) for _ in range(k)], ambient)
            basis = intersect_with_codim_k(f, constraints)
            exact = kernel_in_subspace(f, constraints)
            check.ok(basis.as_subspace() == exact,
                     f"codim-k basis != kernel (field {field}, trial {trial})")
    big = FieldSpec.prime(DEFAULT_PRIME)
    for trial in range(6):
        ambient = rng.randint(4, 6)
        family = random_family(big, ambient, rng.randint(1, 4), rng, min_dim=2)
        expected = rho(family, 1).value
        x = sample_vector(big, ambient, rng)
        check.ok(hyperplane_intersection_dim(family, x) == expected,
                 f"hyperplane identity fails (trial {trial})")
    for trial in range(4):
        ambient = rng.randint(5, 7)
        k = 2
        family = random_family(big, ambient, rng.randint(1, 3), rng,
                               max_dim=ambient - 2, min_dim=k + 1)
        expected = rho(family, k).value
        constraints = Matrix.from_rows(
            big, [sample_vector(big, ambient, rng) for _ in range(k)], ambient)
        check.ok(codim_intersection_dim(family, constraints) == expected,
                 f"codim-{k} identity fails (trial {trial})")
    for trial in range(4):
        ambient = rng.randint(4, 6)
        family = random_family(rational, ambient, rng.randint(1, 4), rng, min_dim=2)
        planes = split_to_planes(family)
        check.ok(all(p.dim == 2 for p in planes),
                 f"split produced a non-plane (trial {trial})")
        expected_count = sum(f.dim * (f.dim - 1) // 2 for f in family)
        check.ok(len(planes) == expected_count,
                 f"split produced {len(planes)} planes, expected {expected_count}")
        check.ok(rho(planes, 1).value == rho(family, 1).value,
                 f"splitting to planes changed the c=1 partition rank (trial {trial})")
    return check.done()


def suite_rigidity(seed: int) -> list[str]:
    rng = random.Random(seed)
    check = _Check()
    named = [
        ("K3", Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)]), 3, True, 0),
        ("P3", Graph.from_edges(3, [(0, 1), (1, 2)]), 2, False, 1),
        ("C4", Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), 4, False, 1),
        ("K4", Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]),
         5, True, 0),
    ]
    for name, graph, expect_rank, expect_rigid, expect_dof in named:
        report = rigidity_report(graph)
        check.ok(report.rank == expect_rank and report.rigid == expect_rigid
                 and report.dof == expect_dof,
                 f"{name} report off: rank {report.rank}, rigid {report.rigid}")
    for n in (2, 3, 4):
        for graph in graphs_up_to_iso(n):
            deterministic = rigidity_rank_2d(graph)
            check.ok((deterministic == 2 * n - 3) == laman_oracle(graph),
                     f"rank/pebble-game mismatch on n={n}, edges {graph.edges}")
    for trial in range(6):
        n = rng.randint(4, 6)
        graph = random_graph(n, rng)
        check.ok((rigidity_rank_2d(graph) == 2 * n - 3) == laman_oracle(graph),
                 f"rank/pebble-game mismatch on random graph (trial {trial})")
    k4 = named[3][1]
    report3 = rigidity_report(k4, t=3, trials=3, seed=rng.randrange(2**32))
    check.ok(report3.rank == 6 and report3.rigid and report3.method == "randomized",
             f"K4 in three dimensions: rank {report3.rank}, rigid {report3.rigid}")
    check.ok(required_rank(4, 3) == 6, "required rank for n=4, t=3 is not 6")
    return check.done()


_SUITES = {
    "linalg": suite_linalg,
    "partitions": suite_partitions,
    "sfm": suite_sfm,
    "engine": suite_engine,
    "symbolic": suite_symbolic,
    "rigidity": suite_rigidity,
}


def suite_seeds(master_seed: int) -> dict[str, int]:
    """Per-suite seeds drawn in the fixed SUITE_NAMES order."""
    base = random.Random(master_seed)
    return {name: base.getrandbits(64) for name in SUITE_NAMES}


def run_suites(names: list[str], master_seed: int) -> dict[str, tuple[bool, list[str]]]:
    """Run the named suites; a crash inside a suite counts as a failure."""
    seeds = suite_seeds(master_seed)
    results: dict[str, tuple[bool, list[str]]] = {}
    for name in names:
        try:
            failures = _SUITES[name](seeds[name])
        except GenrankError as exc:
            failures = [f"raised {type(exc).__name__}: {exc}"]
        results[name] = (not failures, failures)
    return results
