import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_min_cut, to_nx
from vitallink import build_instance
from vitallink.errors import InputError, LinkageError
from vitallink.family import source_contraction
from vitallink.graph import (
    INSEPARABLE,
    Graph,
    contract_edge,
    delete_vertex,
    is_k_connected,
    make_grid,
    min_vertex_cut,
    separates,
    validate_linkage,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


def assert_well_formed(g):
    for u, v in g.edges:
        assert u < v < g.n
        assert v in g.adj[u] and u in g.adj[v]
    assert sum(len(a) for a in g.adj) == 2 * g.m


@pytest.mark.parametrize(
    "m, n, vertices, edges",
    [(1, 1, 1, 0), (3, 3, 9, 12), (2, 5, 10, 13)],
)
def test_make_grid_counts(m, n, vertices, edges):
    g = make_grid(m, n)
    assert (g.n, g.m) == (vertices, edges)
    assert g.m == m * (n - 1) + n * (m - 1)
    assert_well_formed(g)


def test_make_grid_row_major_ids():
    g = make_grid(2, 3)
    # (1,2) -> 1 neighbours (1,1), (1,3), (2,2)
    assert g.adj[1] == {0, 2, 4}


@pytest.mark.parametrize("dims", [(0, 3), (2, 0)])
def test_make_grid_rejects_zero(dims):
    with pytest.raises(InputError):
        make_grid(*dims)


def test_graph_rejects_loops_and_bad_ids():
    with pytest.raises(InputError):
        Graph(2, [(1, 1)])
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])


def test_duplicate_edges_collapse():
    assert Graph(2, [(0, 1), (1, 0)]).m == 1


def test_delete_vertex_examples():
    g, id_map = delete_vertex(make_grid(3, 3), 4)
    assert (g.n, g.m) == (8, 8)
    assert 4 not in id_map and id_map[8] == 7

    g, _ = delete_vertex(Graph(1), 0)
    assert g.n == 0

    g, _ = delete_vertex(make_grid(1, 3), 1)
    assert (g.n, g.m) == (2, 0)

    with pytest.raises(InputError):
        delete_vertex(Graph(3), 3)


def test_contract_edge_examples():
    g, id_map = contract_edge(make_grid(1, 3), (0, 1))
    assert (g.n, g.m) == (2, 1)
    assert id_map[0] == id_map[1] == 0

    tri = Graph(3, [(0, 1), (1, 2), (0, 2)])
    g, _ = contract_edge(tri, (2, 1))
    assert (g.n, g.m) == (2, 1)

    with pytest.raises(InputError):
        contract_edge(make_grid(1, 3), (0, 2))


def test_contract_at_source_of_g3():
    g, e = source_contraction(build_instance(3))
    assert e == (0, 1)
    assert g.n == 48


def test_validate_linkage_pattern_and_errors():
    inst = build_instance(2)
    paths = [(0, 1, 2, 3, 4, 5), (6, 7, 8)]
    assert validate_linkage(inst.graph, paths) == {frozenset({0, 5}), frozenset({6, 8})}
    # single-vertex paths are linkages too
    assert validate_linkage(Graph(1), [(0,)]) == {frozenset({0})}

    with pytest.raises(LinkageError) as exc:
        validate_linkage(inst.graph, [(0, 1, 2), (2, 8)])
    assert exc.value.kind == "overlap"
    with pytest.raises(LinkageError) as exc:
        validate_linkage(inst.graph, [(0, 1, 1)])
    assert exc.value.kind == "overlap"
    with pytest.raises(LinkageError) as exc:
        validate_linkage(inst.graph, [(0, 2)])
    assert exc.value.kind == "broken path"
    with pytest.raises(InputError):
        validate_linkage(inst.graph, [(0, 99)])


def test_min_vertex_cut_examples():
    grid = make_grid(3, 3)
    size, cut = min_vertex_cut(grid, [0, 3, 6], [2, 5, 8])
    assert size == 3 and cut == {1, 4, 7}

    path = make_grid(1, 6)
    size, cut = min_vertex_cut(path, [0], [5])
    assert size == 1 and len(cut) == 1 and separates(path, cut, [0], [5])

    assert min_vertex_cut(Graph(2), [0], [1]) == (0, frozenset())


def test_min_vertex_cut_inseparable_and_overlap():
    assert min_vertex_cut(make_grid(1, 2), [0], [1]) == (INSEPARABLE, frozenset())
    assert math.isinf(INSEPARABLE)
    with pytest.raises(InputError):
        min_vertex_cut(make_grid(1, 3), [0, 1], [1, 2])


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=10), st.data())
def test_min_vertex_cut_matches_brute_force(g, data):
    if g.n < 2:
        return
    verts = list(range(g.n))
    a = data.draw(st.lists(st.sampled_from(verts), min_size=1, max_size=min(2, g.n - 1), unique=True))
    rest = [v for v in verts if v not in a]
    b = data.draw(st.lists(st.sampled_from(rest), min_size=1, max_size=2, unique=True))
    size, cut = min_vertex_cut(g, a, b)
    if size == INSEPARABLE:
        assert any(w in b for v in a for w in g.adj[v])
        return
    assert not (cut & (set(a) | set(b)))
    assert separates(g, cut, a, b)
    assert size == brute_force_min_cut(g, a, b)


@pytest.mark.parametrize(
    "g, c, expected",
    [
        (Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]), 3, True),
        (make_grid(3, 3), 2, True),
        (make_grid(3, 3), 3, False),
        (build_instance(2).graph, 3, False),
        (Graph(3, [(0, 1), (1, 2), (0, 2)]), 3, False),
    ],
)
def test_is_k_connected_examples(g, c, expected):
    assert is_k_connected(g, c) is expected


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9), st.integers(1, 4))
def test_is_k_connected_matches_networkx(g, c):
    h = to_nx(g)
    expected = g.n > c and nx.node_connectivity(h) >= c if g.n > 1 else False
    assert is_k_connected(g, c) is expected


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_graph_operations_keep_invariants(g):
    assert_well_formed(g)
    if g.n:
        h, id_map = delete_vertex(g, g.n - 1)
        assert_well_formed(h)
        assert sorted(id_map.values()) == list(range(h.n))
    for e in sorted(g.edges)[:3]:
        h, id_map = contract_edge(g, e)
        assert_well_formed(h)
        assert h.n == g.n - 1
        assert h.m <= g.m - 1
