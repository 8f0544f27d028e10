"""Undirected simple graphs over dense integer ids, plus the combinatorial
primitives used by the rest of the package: grids, vertex deletion, edge
contraction, linkage validation, vertex cuts and vertex connectivity.

Graphs are immutable. Every operation that changes the vertex set returns the
new graph together with an ``old id -> new id`` map.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Sequence

from .errors import InputError, LinkageError

Edge = tuple[int, int]
Path = tuple[int, ...]
Linkage = tuple[Path, ...]
Pattern = frozenset  # of frozensets of one or two ids

#: Size reported by :func:`min_vertex_cut` when ``A`` and ``B`` are adjacent.
INSEPARABLE = math.inf


def _norm(u, v) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """An undirected simple graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        normed = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
            normed.add(_norm(u, v))
        adj = [set() for _ in range(n)]
        for u, v in normed:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(normed)
        self.adj = tuple(frozenset(a) for a in adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def _check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InputError(f"vertex {v!r} is not in 0..{self.n - 1}")


def make_grid(m: int, n: int) -> Graph:
    """Return the ``m x n`` grid; cell ``(r, c)`` (1-based) has id ``(r-1)*n + (c-1)``."""
    if m < 1 or n < 1:
        raise InputError(f"grid dimensions must be positive, got {m}x{n}")
    edges = []
    for r in range(m):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < m:
                edges.append((v, v + n))
    return Graph(m * n, edges)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``keep``; ids are renumbered densely in increasing order."""
    kept = sorted(set(keep))
    for v in kept:
        g._check_vertex(v)
    id_map = {old: new for new, old in enumerate(kept)}
    edges = [(id_map[u], id_map[v]) for u, v in g.edges if u in id_map and v in id_map]
    return Graph(len(kept), edges), id_map


def delete_vertex(g: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    g._check_vertex(v)
    return induced_subgraph(g, (u for u in g.vertices() if u != v))


def delete_vertices(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    gone = set(vs)
    for v in gone:
        g._check_vertex(v)
    return induced_subgraph(g, (u for u in g.vertices() if u not in gone))


def contract_edge(g: Graph, e: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Merge the endpoints of ``e``.

    The merged vertex takes the smaller endpoint's position in the dense
    renumbering; both endpoints map to it in the returned id map.
    """
    u, v = _norm(int(e[0]), int(e[1]))
    if not g.has_edge(u, v):
        raise InputError(f"{(u, v)} is not an edge")
    id_map = {}
    nxt = 0
    for w in g.vertices():
        if w == v:
            continue
        id_map[w] = nxt
        nxt += 1
    id_map[v] = id_map[u]
    edges = set()
    for a, b in g.edges:
        a2, b2 = id_map[a], id_map[b]
        if a2 != b2:
            edges.add(_norm(a2, b2))
    return Graph(g.n - 1, edges), id_map


def path_pattern(paths: Iterable[Sequence[int]]) -> Pattern:
    return frozenset(frozenset((p[0], p[-1])) for p in paths)


def validate_linkage(g: Graph, paths: Iterable[Sequence[int]]) -> Pattern:
    """Check that ``paths`` is a linkage of ``g`` and return its pattern.

    Raises :class:`LinkageError` with kind ``"broken path"`` for a
    non-adjacent consecutive pair and ``"overlap"`` for a vertex used twice.
    """
    seen = {}
    paths = [tuple(p) for p in paths]
    for i, p in enumerate(paths):
        if not p:
            raise LinkageError("empty path", f"path {i} has no vertices")
        for v in p:
            g._check_vertex(v)
            if v in seen:
                raise LinkageError(
                    "overlap", f"vertex {v} appears in path {seen[v]} and path {i}"
                )
            seen[v] = i
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise LinkageError("broken path", f"path {i}: {a} and {b} are not adjacent")
    return path_pattern(paths)


def reachable(g: Graph, sources: Iterable[int], blocked: Iterable[int] = ()) -> set[int]:
    """Vertices reachable from ``sources`` without entering ``blocked``."""
    blocked = set(blocked)
    seen = {s for s in sources if s not in blocked}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen and w not in blocked:
                seen.add(w)
                queue.append(w)
    return seen


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(reachable(g, [0])) == g.n


def separates(g: Graph, cut: Iterable[int], a: Iterable[int], b: Iterable[int]) -> bool:
    cut = set(cut)
    return not (reachable(g, a, cut) & (set(b) - cut))


def _vertex_flow(g: Graph, a: set, b: set, limit=None):
    """Unit-capacity vertex-split max flow from ``a`` to ``b``.

    Vertices of ``a`` and ``b`` are uncapacitated. Returns the flow value and
    the set of split nodes reachable from the source in the final residual
    network. Stops early once the flow reaches ``limit``.
    """
    big = g.n + 1
    src, snk = 2 * g.n, 2 * g.n + 1
    cap = {}

    def arc(x, y, c):
        cap.setdefault(x, {})
        cap.setdefault(y, {})
        cap[x][y] = cap[x].get(y, 0) + c
        cap[y].setdefault(x, 0)

    for v in g.vertices():
        arc(2 * v, 2 * v + 1, big if (v in a or v in b) else 1)
    for u, v in g.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    for v in a:
        arc(src, 2 * v, big)
    for v in b:
        arc(2 * v + 1, snk, big)
    cap.setdefault(src, {})
    cap.setdefault(snk, {})

    flow = 0
    while limit is None or flow < limit:
        parent = {src: None}
        queue = deque([src])
        while queue and snk not in parent:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if snk not in parent:
            return flow, set(parent)
        y = snk
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    return flow, None


def min_vertex_cut(g: Graph, a: Iterable[int], b: Iterable[int]):
    """Minimum vertex set outside ``a`` and ``b`` separating ``a`` from ``b``.

    Returns ``(size, cut)``. If some vertex of ``a`` is adjacent to one of
    ``b`` no such set exists and ``(INSEPARABLE, frozenset())`` is returned.
    """
    a, b = set(a), set(b)
    if not a or not b:
        raise InputError("both vertex sets must be non-empty")
    for v in a | b:
        g._check_vertex(v)
    if a & b:
        raise InputError(f"vertex sets overlap in {sorted(a & b)}")
    if any(w in b for v in a for w in g.adj[v]):
        return INSEPARABLE, frozenset()
    size, side = _vertex_flow(g, a, b)
    cut = frozenset(v for v in g.vertices() if 2 * v in side and 2 * v + 1 not in side)
    assert len(cut) == size
    return size, cut


def _local_connectivity_at_least(g: Graph, u: int, v: int, c: int) -> bool:
    flow, _ = _vertex_flow(g, {u}, {v}, limit=c)
    return flow >= c


def is_k_connected(g: Graph, c: int) -> bool:
    """True iff ``g`` has more than ``c`` vertices and no separator of size < ``c``.

    Uses the Esfahanian-Hakimi reduction: with a fixed vertex ``x``, every
    minimum separator either avoids ``x`` (so separates ``x`` from a
    non-neighbour) or contains it (so separates two non-adjacent neighbours).
    """
    if c < 1:
        raise InputError(f"connectivity order must be positive, got {c}")
    if g.n <= c:
        return False
    if not is_connected(g):
        return False
    x = min(g.vertices(), key=lambda w: (g.degree(w), w))
    if g.degree(x) < c:
        return False
    for y in g.vertices():
        if y != x and y not in g.adj[x]:
            if not _local_connectivity_at_least(g, x, y, c):
                return False
    nbrs = sorted(g.adj[x])
    for i, y in enumerate(nbrs):
        for z in nbrs[i + 1:]:
            if z not in g.adj[y] and not _local_connectivity_at_least(g, y, z, c):
                return False
    return True
