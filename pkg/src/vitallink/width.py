"""Tree and path decompositions: validation, the column-sweep construction for
folded grids, exact subset-DP solvers for small graphs, and certified width
reports.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import CertificateError, DecompositionError, InputError, ResourceLimitError
from .family import DppInstance, GridCertificate, grid_certificate, non_grid_chords
from .graph import Graph

#: Largest graph accepted by the exponential exact solvers.
EXACT_VERTEX_CAP = 18


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by tree node; for ``shape="path"`` the bag order is the path."""

    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]
    shape: str = "tree"

    @classmethod
    def path(cls, bags) -> "TreeDecomposition":
        bags = tuple(frozenset(b) for b in bags)
        return cls(bags, tuple((i, i + 1) for i in range(len(bags) - 1)), "path")

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


@dataclass(frozen=True)
class WidthReport:
    lower: int
    lower_certificate: str
    upper: int
    upper_decomposition: TreeDecomposition
    exact: int | None = None
    exact_treewidth: int | None = None
    exact_pathwidth: int | None = None


def validate_decomposition(g: Graph, d: TreeDecomposition) -> int:
    """Check the decomposition conditions and return its width."""
    nodes = len(d.bags)
    if nodes == 0:
        raise DecompositionError("not a tree", "decomposition has no nodes")
    tadj = [[] for _ in range(nodes)]
    for a, b in d.tree_edges:
        if not (0 <= a < nodes and 0 <= b < nodes) or a == b:
            raise DecompositionError("not a tree", f"bad tree edge {(a, b)}")
        tadj[a].append(b)
        tadj[b].append(a)
    if len({tuple(sorted(e)) for e in d.tree_edges}) != nodes - 1 or len(d.tree_edges) != nodes - 1:
        raise DecompositionError("not a tree", f"{len(d.tree_edges)} edges on {nodes} nodes")
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in tadj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != nodes:
        raise DecompositionError("not a tree", "tree is disconnected")
    if d.shape == "path" and any(len(a) > 2 for a in tadj):
        raise DecompositionError("not a path", "a node has more than two neighbours")

    occurrences = {}
    for t, bag in enumerate(d.bags):
        for v in bag:
            if not (isinstance(v, int) and 0 <= v < g.n):
                raise DecompositionError("unknown vertex", f"bag {t} holds {v!r}")
            occurrences.setdefault(v, []).append(t)
    for v in g.vertices():
        if v not in occurrences:
            raise DecompositionError("uncovered vertex", f"vertex {v} is in no bag")
    for u, v in g.sorted_edges():
        if not any(u in d.bags[t] for t in occurrences[v]):
            raise DecompositionError("uncovered edge", f"edge {(u, v)} is in no bag")
    for v, ts in occurrences.items():
        where = set(ts)
        comp = {ts[0]}
        queue = deque([ts[0]])
        while queue:
            x = queue.popleft()
            for y in tadj[x]:
                if y in where and y not in comp:
                    comp.add(y)
                    queue.append(y)
        if comp != where:
            raise DecompositionError(
                "disconnected occurrence", f"bags holding vertex {v} are not connected"
            )
    return d.width


def column_sweep_decomposition(inst: DppInstance, cert: GridCertificate) -> TreeDecomposition:
    """Width-``q`` path decomposition of a ``q x q`` certified instance.

    Bag ``(i, j)`` holds rows ``j..q`` of column ``i`` and rows ``1..j`` of
    column ``i + 1``; bags are chained in lexicographic order. Chords that
    stay inside one column are covered because bag ``(i, 1)`` holds all of
    column ``i`` (and the last bag all of column ``q``).
    """
    if cert.m != cert.n or len(cert.cell) != inst.graph.n:
        raise InputError("column sweep needs a square certificate covering every vertex")
    q = cert.m
    if q == 1:
        bags = [{cert.cell[(1, 1)]}]
    else:
        bags = []
        for i in range(1, q):
            for j in range(1, q + 1):
                bag = {cert.cell[(r, i)] for r in range(j, q + 1)}
                bag |= {cert.cell[(r, i + 1)] for r in range(1, j + 1)}
                bags.append(bag)
    d = TreeDecomposition.path(bags)
    validate_decomposition(inst.graph, d)
    return d


def restrict_decomposition(d: TreeDecomposition, id_map: dict[int, int]) -> TreeDecomposition:
    """Decomposition of an induced subgraph: drop unmapped vertices, rename the rest."""
    bags = tuple(frozenset(id_map[v] for v in bag if v in id_map) for bag in d.bags)
    return TreeDecomposition(bags, d.tree_edges, d.shape)


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in g.vertices()]


def _check_cap(g: Graph):
    if g.n > EXACT_VERTEX_CAP:
        raise ResourceLimitError(
            f"exact width solvers are capped at {EXACT_VERTEX_CAP} vertices, graph has {g.n}"
        )


def _q_size(adj: list[int], s: int, v: int) -> int:
    """Number of vertices outside ``s | {v}`` reachable from ``v`` through ``s``."""
    visited = (1 << v) | (adj[v] & s)
    frontier = adj[v] & s
    out = adj[v] & ~s
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nb = adj[low.bit_length() - 1]
        new_inner = nb & s & ~visited
        visited |= new_inner
        frontier |= new_inner
        out |= nb & ~s
    out &= ~(1 << v)
    return bin(out).count("1")


def elimination_decomposition(g: Graph, order) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    fill = [set(a) for a in g.adj]
    bags = []
    higher_of = []
    for v in order:
        higher = {w for w in fill[v] if pos[w] > pos[v]}
        bags.append(frozenset(higher | {v}))
        higher_of.append(higher)
        for a in higher:
            fill[a] |= higher - {a}
    edges = []
    last = len(order) - 1
    for i, higher in enumerate(higher_of):
        if i == last:
            continue
        parent = min((pos[w] for w in higher), default=last)
        edges.append((i, parent))
    if not bags:
        bags = [frozenset()]
    return TreeDecomposition(tuple(bags), tuple(edges), "tree")


def exact_treewidth(g: Graph, with_decomposition=False):
    """Exact tree-width by dynamic programming over vertex subsets.

    ``TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)`` where ``Q``
    counts the vertices outside ``S`` reachable from ``v`` through ``S - v``.
    """
    _check_cap(g)
    n = g.n
    if n == 0:
        d = TreeDecomposition((frozenset(),), ())
        return (-1, d) if with_decomposition else -1
    adj = _masks(g)
    full = (1 << n) - 1
    tw = [0] * (full + 1)
    best = [0] * (full + 1)
    tw[0] = -1
    for s in range(1, full + 1):
        value, pick = n, -1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            cand = tw[prev]
            if cand < value:
                qv = _q_size(adj, prev, v)
                if qv > cand:
                    cand = qv
                if cand < value:
                    value, pick = cand, v
        tw[s], best[s] = value, pick
    if not with_decomposition:
        return tw[full]
    order = []
    s = full
    while s:
        order.append(best[s])
        s ^= 1 << best[s]
    order.reverse()
    d = elimination_decomposition(g, order)
    width = validate_decomposition(g, d)
    assert width == tw[full], (width, tw[full])
    return tw[full], d


def _boundary_sizes(adj: list[int], full: int) -> list[int]:
    n = len(adj)
    sizes = [0] * (full + 1)
    for s in range(1, full + 1):
        count = 0
        for u in range(n):
            if s >> u & 1 and adj[u] & ~s:
                count += 1
        sizes[s] = count
    return sizes


def exact_pathwidth(g: Graph, with_decomposition=False):
    """Exact path-width as the vertex separation number, by subset DP.

    ``f(S) = max(|boundary(S)|, min over v in S of f(S - v))`` where the
    boundary of ``S`` is the set of its vertices with a neighbour outside ``S``.
    """
    _check_cap(g)
    n = g.n
    if n == 0:
        d = TreeDecomposition.path([frozenset()])
        return (-1, d) if with_decomposition else -1
    adj = _masks(g)
    full = (1 << n) - 1
    boundary = _boundary_sizes(adj, full)
    f = [0] * (full + 1)
    best = [0] * (full + 1)
    for s in range(1, full + 1):
        value, pick = n, -1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            cand = f[s ^ low]
            if cand < value:
                value, pick = cand, low.bit_length() - 1
        f[s], best[s] = max(value, boundary[s]), pick
    if not with_decomposition:
        return f[full]
    order = []
    s = full
    while s:
        order.append(best[s])
        s ^= 1 << best[s]
    order.reverse()
    bags = []
    prefix = 0
    for v in order:
        bound = {u for u in range(n) if prefix >> u & 1 and adj[u] & ~prefix}
        bags.append(bound | {v})
        prefix |= 1 << v
    d = TreeDecomposition.path(bags)
    width = validate_decomposition(g, d)
    assert width <= f[full], (width, f[full])
    return f[full], d


def width_report(inst: DppInstance) -> WidthReport:
    """Certified lower and upper width bounds for a square family instance.

    The lower bound is the side of the certified grid subgraph (a ``q x q``
    grid has tree-width and path-width ``q`` for ``q >= 2``; a single vertex
    has width 0). The upper bound is the validated column-sweep path
    decomposition. Path-width bounds tree-width from above, so equal bounds
    pin both.
    """
    if not inst.is_family or inst.p != 2 ** inst.k - 1:
        raise InputError(f"width report needs a square family instance, got {inst.name!r}")
    cert = grid_certificate(inst)
    non_grid_chords(inst, cert)
    q = min(cert.m, cert.n)
    lower = q if q >= 2 else 0
    sweep = column_sweep_decomposition(inst, cert)
    upper = validate_decomposition(inst.graph, sweep)
    if lower > upper:
        raise CertificateError(f"lower bound {lower} exceeds upper bound {upper}")
    tw = pw = None
    if inst.graph.n <= EXACT_VERTEX_CAP:
        tw = exact_treewidth(inst.graph)
        pw = exact_pathwidth(inst.graph)
        if not (lower <= tw <= pw <= upper):
            raise CertificateError(f"exact widths tw={tw}, pw={pw} outside [{lower}, {upper}]")
    return WidthReport(
        lower=lower,
        lower_certificate=f"grid subgraph {cert.m}x{cert.n}",
        upper=upper,
        upper_decomposition=sweep,
        exact=lower if lower == upper else None,
        exact_treewidth=tw,
        exact_pathwidth=pw,
    )
