"""Exit criteria. Each test is one criterion at its stated budget; the
terminal summary prints one PASS/FAIL line per criterion."""

import time

import pytest

from oracles import brute_force_solutions
from vitallink.engine import irrelevant_scan, solve, vital_check
from vitallink.errors import DecompositionError, ResourceLimitError
from vitallink.family import (
    CONTROL_NAMES,
    build_instance,
    canonical_linkage,
    control_instance,
    grid_certificate,
    non_grid_chords,
    source_contraction,
)
from vitallink.formats import dumps_instance, loads_instance, to_dimacs, to_dot
from vitallink.graph import is_k_connected, min_vertex_cut, validate_linkage
from vitallink.graph import make_grid
from vitallink.width import exact_pathwidth, exact_treewidth, validate_decomposition, width_report

from test_engine import seeded_instances
from test_width import SEEDED_VIOLATIONS


def edges_by_recursion(k, p):
    # |E(G(1, p))| = p - 1;  |E(G(k+1, p))| = |E(G(k, 2p))| + 3p - 1
    if k == 1:
        return p - 1
    return edges_by_recursion(k - 1, 2 * p) + 3 * p - 1


@pytest.mark.acceptance(1, "construction counts for k = 1..6")
def test_construction_counts():
    start = time.perf_counter()
    for k, vertices in zip(range(1, 7), (1, 9, 49, 225, 961, 3969)):
        inst = build_instance(k)
        q = 2 ** k - 1
        counted_edges = sum(len(a) for a in inst.graph.adj) // 2
        assert inst.graph.n == len(inst.graph.adj) == q * q == vertices
        assert counted_edges == edges_by_recursion(k, q) == q * (2 ** (k + 1) - 3) - k
    assert [build_instance(k).graph.m for k in (2, 3, 4)] == [13, 88, 431]
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "grid certificate and same-column chords for k = 1..6")
def test_grid_certificate():
    start = time.perf_counter()
    for k in range(1, 7):
        inst = build_instance(k)
        cert = grid_certificate(inst)
        q = 2 ** k - 1
        assert (cert.m, cert.n) == (q, q)
        assert len(set(cert.cell.values())) == inst.graph.n
        for u, v in cert.grid_edges():
            assert inst.graph.has_edge(u, v)
        chords = non_grid_chords(inst, cert)
        assert len(chords) == 2 ** k - k - 1
        pos = cert.inverse()
        assert all(pos[u][1] == pos[v][1] == c for (u, v), c in chords)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(3, "canonical linkage valid and spanning for k = 1..6")
def test_canonical_linkage():
    start = time.perf_counter()
    for k in range(1, 7):
        inst = build_instance(k)
        paths = canonical_linkage(inst)
        assert validate_linkage(inst.graph, paths) == inst.terminal_pattern()
        assert sum(len(p) for p in paths) == inst.graph.n
        assert [len(p) for p in paths] == [2 ** (k - j) * (2 ** k - 1) for j in range(1, k + 1)]
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(4, "tree-width = path-width = 2^k - 1 for k = 2..6")
def test_width_equality():
    start = time.perf_counter()
    for k in range(2, 7):
        inst = build_instance(k)
        q = 2 ** k - 1
        report = width_report(inst)
        assert report.lower == report.upper == report.exact == q
        assert validate_decomposition(inst.graph, report.upper_decomposition) == q
        assert report.upper_decomposition.shape == "path"
    g2 = build_instance(2).graph
    assert exact_treewidth(g2) == 3
    assert exact_pathwidth(g2) == 3
    assert time.perf_counter() - start < 10.0


@pytest.mark.acceptance(5, "unique solution for G_1, G_2, G_3; G_4 counting refused")
def test_uniqueness():
    start = time.perf_counter()
    assert solve(build_instance(1), "count", "backtrack").count == 1
    assert solve(build_instance(1), "count", "td-dp").count == 1
    g2 = build_instance(2)
    assert solve(g2, "count", "backtrack").count == 1
    assert solve(g2, "count", "td-dp").count == 1
    g3 = build_instance(3)
    assert solve(g3, "count", "td-dp").count == 1
    assert vital_check(g3, canonical_linkage(g3)).status == "vital"
    with pytest.raises(ResourceLimitError):
        solve(build_instance(4), "count", "td-dp")
    assert time.perf_counter() - start < 30 * 60


@pytest.mark.acceptance(6, "no irrelevant vertex in G_2 and G_3")
def test_no_irrelevant_vertex():
    start = time.perf_counter()
    r2 = irrelevant_scan(build_instance(2))
    assert r2.complete and r2.checked == 5 and r2.irrelevant == frozenset()
    r3 = irrelevant_scan(build_instance(3), engine="td-dp")
    assert r3.complete and r3.checked == 43 and r3.irrelevant == frozenset()
    assert time.perf_counter() - start < 60 * 60


@pytest.mark.acceptance(7, "min vertex cut between first and last grid column is q")
def test_menger_cuts():
    start = time.perf_counter()
    for k in (2, 3, 4):
        inst = build_instance(k)
        cert = grid_certificate(inst)
        q = 2 ** k - 1
        size, cut = min_vertex_cut(inst.graph, cert.column(1), cert.column(q))
        assert size == q == len(cut)
    assert time.perf_counter() - start < 10.0


@pytest.mark.acceptance(8, "3-connected after contraction at s_1: k=3,4 true, k=2 false")
def test_connectivity_claim():
    reported = {k: is_k_connected(source_contraction(build_instance(k))[0], 3) for k in (2, 3, 4)}
    # k = 2 fails: t_1 keeps degree 2 after any contraction at s_1
    assert reported == {2: False, 3: True, 4: True}


@pytest.mark.acceptance(9, "negative controls behave as expected")
def test_negative_controls():
    one = control_instance("grid-one-pair")
    assert solve(one, "count").count > 1
    assert irrelevant_scan(one).irrelevant

    infeasible = control_instance("path-infeasible")
    assert solve(infeasible, "decide").solvable is False
    assert irrelevant_scan(infeasible).irrelevant == {2}

    snake = [(0, 3, 6, 7, 8, 5, 4, 1, 2)]
    res = vital_check(one, snake)
    assert res.status == "not-unique"
    assert res.witness == ((0, 1, 2),)
    assert validate_linkage(one.graph, res.witness) == one.terminal_pattern()

    loose = control_instance("grid-two-pair-loose")
    assert solve(loose, "count").count >= 2


@pytest.mark.acceptance(10, "engine agreement, validator violations, round-trip and determinism")
def test_property_suites():
    instances = [control_instance(n) for n in CONTROL_NAMES] + [build_instance(1), build_instance(2)]
    instances += seeded_instances()
    assert len(instances) == 205
    for inst in instances:
        assert inst.graph.n <= 12
        bt = solve(inst, "count", "backtrack")
        dp = solve(inst, "count", "td-dp")
        assert bt.count == dp.count
        if inst.graph.n <= 8:
            assert bt.count == len(brute_force_solutions(inst.graph, inst.terminals))

    path5 = make_grid(1, 5)
    for kind, d in SEEDED_VIOLATIONS.items():
        with pytest.raises(DecompositionError) as exc:
            validate_decomposition(path5, d)
        assert exc.value.kind == kind

    family = [build_instance(k) for k in range(1, 7)] + [build_instance(3, 30)]
    for inst in family + [control_instance(n) for n in CONTROL_NAMES]:
        text = dumps_instance(inst)
        back = loads_instance(text)
        assert back == inst and dumps_instance(back) == text
    for k in range(1, 5):
        a, b = build_instance(k), build_instance(k)
        assert dumps_instance(a) == dumps_instance(b)
        assert to_dimacs(a) == to_dimacs(b) and to_dot(a) == to_dot(b)
