"""Graph rigidity: deterministic plane rank, randomized t >= 3, pebble game."""

from __future__ import annotations

import random

import pytest

from genrank.errors import (
    BadOrder,
    BadVertex,
    DuplicateEdge,
    LoopEdge,
    TooFewVertices,
)
from genrank.fields import FieldSpec
from genrank.rigidity import (
    Graph,
    edge_subspace,
    laman_oracle,
    required_rank,
    rigidity_family,
    rigidity_rank_2d,
    rigidity_report,
    symbolic_rigidity_row,
)
from genrank.verify import graphs_up_to_iso, random_graph

K3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
K4 = Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def test_graph_validation():
    g = Graph.from_edges(3, [(2, 1)])
    assert g.edges == ((1, 2),)
    with pytest.raises(BadVertex):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(LoopEdge):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(DuplicateEdge):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_edge_subspace():
    s = edge_subspace(3, 0, 1, 2)
    assert s.ambient_dim == 6 and s.dim == 2
    # block j carries e_{j*n+u} - e_{j*n+v}
    assert s.contains(tuple(map(s.field.from_int, [1, -1, 0, 0, 0, 0])))
    assert s.contains(tuple(map(s.field.from_int, [0, 0, 0, 1, -1, 0])))
    fp = FieldSpec.prime(10007)
    assert edge_subspace(3, 0, 1, 2, fp).field == fp


def test_rigidity_family():
    family = rigidity_family(K3, 2)
    assert len(family) == 3 and family.ambient_dim == 6
    assert all(f.dim == 2 for f in family)
    assert len(rigidity_family(Graph.from_edges(3, []), 2)) == 0


def test_required_rank():
    assert required_rank(3, 2) == 3
    assert required_rank(4, 2) == 5
    assert required_rank(4, 3) == 6
    assert required_rank(5, 3) == 9


def test_named_reports():
    for graph, rank2, rigid, dof in (
        (K3, 3, True, 0),
        (P3, 2, False, 1),
        (C4, 4, False, 1),
        (K4, 5, True, 0),
    ):
        report = rigidity_report(graph)
        assert report.dimension == 2
        assert report.method == "deterministic"
        assert (report.rank, report.rigid, report.dof) == (rank2, rigid, dof)
        assert report.required == 2 * graph.n - 3


def test_report_input_validation():
    with pytest.raises(BadOrder):
        rigidity_report(K3, t=1)
    with pytest.raises(TooFewVertices):
        rigidity_report(Graph.from_edges(2, [(0, 1)]), t=2)
    with pytest.raises(TooFewVertices):
        rigidity_report(K3, t=3)


def test_k4_three_dimensions_randomized():
    report = rigidity_report(K4, t=3, seed=0)
    assert report.method == "randomized"
    assert report.rank == 6 and report.rigid and report.dof == 0
    # seeded: the exact same report again
    assert rigidity_report(K4, t=3, seed=0) == report


def test_symbolic_row():
    x = list(range(1, 7))  # placement (1,2,3),(4,5,6) for 3 vertices in 2-space
    row = symbolic_rigidity_row(K3, 2, (0, 1), x)
    assert row == (-1, 1, 0, -1, 1, 0)
    with pytest.raises(BadVertex):
        symbolic_rigidity_row(K3, 2, (0, 0), x)
    with pytest.raises(BadVertex):
        symbolic_rigidity_row(K3, 2, (0, 1), x[:4])


def test_laman_oracle_known():
    assert laman_oracle(K3)
    assert not laman_oracle(P3)
    assert not laman_oracle(C4)
    assert laman_oracle(K4)
    # K4 minus one edge is still rigid; C4 plus one diagonal is rigid
    assert laman_oracle(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]))
    assert laman_oracle(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]))
    with pytest.raises(TooFewVertices):
        laman_oracle(Graph.from_edges(1, []))


def test_graphs_up_to_iso_counts():
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
    for n, count in expected.items():
        assert len(graphs_up_to_iso(n)) == count


def test_rank_agrees_with_pebble_game_small():
    for n in (2, 3, 4, 5):
        for graph in graphs_up_to_iso(n):
            deterministic = rigidity_rank_2d(graph)
            assert (deterministic == 2 * n - 3) == laman_oracle(graph), \
                f"n={n}, edges={graph.edges}"


def test_rank_agrees_with_pebble_game_random():
    rng = random.Random(83)
    for _ in range(20):
        n = rng.randint(4, 7)
        graph = random_graph(n, rng)
        assert (rigidity_rank_2d(graph) == 2 * n - 3) == laman_oracle(graph)


def test_overbraced_graph_rank_caps():
    # K5 has 10 edges but plane rank caps at 2n-3 = 7
    k5 = Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    assert rigidity_rank_2d(k5) == 7
    report = rigidity_report(k5)
    assert report.rigid and report.dof == 0
