"""The folded-grid instance family ``G(k, p)`` and a few negative controls.

``G(1, p)`` is a path on ``p`` vertices. ``G(k+1, p)`` is obtained from
``G(k, 2p)`` by adding a new path ``y_1 .. y_p`` and joining ``y_i`` to both
``x_i`` and ``x_{2p-i+1}``, where ``x`` is the bottom row of ``G(k, 2p)``.
The top row of ``G(k+1, p)`` is the first half of the old top row and its
bottom row is the second half read backwards. The default ``p = 2**k - 1``
gives the square instance ``G_k``.

Vertices are numbered by (level, index) with level 1 (the innermost path)
first. Level ``j`` carries the terminal pair ``(s_j, t_j)`` at its first and
last vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CertificateError, InputError
from .graph import Graph, Linkage, contract_edge, delete_vertex, make_grid, validate_linkage

CONTROL_NAMES = ("grid-one-pair", "grid-two-pair-loose", "path-infeasible")


@dataclass(frozen=True)
class DppInstance:
    """A disjoint paths instance with optional construction metadata.

    ``meta[v]`` is the ``(level, index)`` of vertex ``v`` and ``coords[v]``
    its 1-based ``(row, col)`` grid cell; both are ``None`` for instances
    that were not produced by :func:`build_instance`.
    """

    graph: Graph
    terminals: tuple[tuple[int, int], ...]
    name: str = ""
    k: int | None = None
    p: int | None = None
    meta: tuple[tuple[int, int], ...] | None = None
    coords: tuple[tuple[int, int], ...] | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        seen = {}
        for i, pair in enumerate(self.terminals):
            if len(pair) != 2:
                raise InputError(f"terminal pair {i + 1} must have two entries")
            for v in set(pair):
                if not (isinstance(v, int) and 0 <= v < self.graph.n):
                    raise InputError(f"terminal {v!r} of pair {i + 1} is not a vertex")
                if v in seen:
                    raise InputError(
                        f"terminal {v} is shared by pairs {seen[v] + 1} and {i + 1}"
                    )
                seen[v] = i
        for extra, label in ((self.meta, "meta"), (self.coords, "coords")):
            if extra is not None and len(extra) != self.graph.n:
                raise InputError(f"{label} has {len(extra)} entries for {self.graph.n} vertices")

    @property
    def num_pairs(self) -> int:
        return len(self.terminals)

    @property
    def is_family(self) -> bool:
        return self.meta is not None and self.k is not None and self.p is not None

    def terminal_set(self) -> set[int]:
        return {v for pair in self.terminals for v in pair}

    def terminal_pattern(self) -> frozenset:
        return frozenset(frozenset(pair) for pair in self.terminals)


@dataclass(frozen=True)
class GridCertificate:
    """Witness that the ``m x n`` grid is a subgraph: ``cell[(r, c)]`` is a vertex id."""

    m: int
    n: int
    cell: dict

    def inverse(self) -> dict[int, tuple[int, int]]:
        return {v: rc for rc, v in self.cell.items()}

    def column(self, c: int) -> list[int]:
        return [self.cell[(r, c)] for r in range(1, self.m + 1)]

    def grid_edges(self):
        for r in range(1, self.m + 1):
            for c in range(1, self.n + 1):
                if c < self.n:
                    yield self.cell[(r, c)], self.cell[(r, c + 1)]
                if r < self.m:
                    yield self.cell[(r, c)], self.cell[(r + 1, c)]

    def validate(self, g: Graph, require_bijection=False) -> None:
        """Raise :class:`CertificateError` unless this is a grid subgraph witness."""
        expected = {(r, c) for r in range(1, self.m + 1) for c in range(1, self.n + 1)}
        if set(self.cell) != expected:
            raise CertificateError("certificate does not cover every grid cell exactly")
        ids = list(self.cell.values())
        if len(set(ids)) != len(ids):
            raise CertificateError("certificate is not injective")
        if any(not (0 <= v < g.n) for v in ids):
            raise CertificateError("certificate maps a cell outside the graph")
        for u, v in self.grid_edges():
            if not g.has_edge(u, v):
                raise CertificateError(f"grid edge between vertices {u} and {v} is missing")
        if require_bijection and len(ids) != g.n:
            raise CertificateError(f"certificate covers {len(ids)} of {g.n} vertices")


def level_lengths(k: int, p: int) -> list[int]:
    """Length of the level-``j`` path for ``j = 1 .. k``."""
    return [2 ** (k - j) * p for j in range(1, k + 1)]


def _assert_contiguous_level_one(row, meta):
    idx = [meta[v][1] for v in row]
    assert all(meta[v][0] == 1 for v in row), "row left level 1"
    if len(idx) > 1:
        step = idx[1] - idx[0]
        assert step in (1, -1) and all(b - a == step for a, b in zip(idx, idx[1:]))


def build_instance(k: int, p: int | None = None) -> DppInstance:
    """Construct ``G(k, p)`` with its terminals; ``p`` defaults to ``2**k - 1``."""
    if not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    if p is None:
        p = 2 ** k - 1
    if not isinstance(p, int) or p < 1:
        raise InputError(f"p must be a positive integer, got {p!r}")

    lengths = level_lengths(k, p)
    offsets = [sum(lengths[:j]) for j in range(k)]
    n = sum(lengths)
    meta = [(j + 1, i + 1) for j in range(k) for i in range(lengths[j])]

    def vid(level, index):
        return offsets[level - 1] + index - 1

    edges = []
    for j in range(1, k + 1):
        edges.extend((vid(j, i), vid(j, i + 1)) for i in range(1, lengths[j - 1]))

    # innermost path first; rows are id lists, cells are (row, col)
    top = [vid(1, i) for i in range(1, lengths[0] + 1)]
    bottom = list(top)
    cell = {v: (1, i + 1) for i, v in enumerate(top)}
    height = 1
    for j in range(2, k + 1):
        half = lengths[j - 1]
        assert len(bottom) == len(top) == 2 * half
        for i in range(1, half + 1):
            y = vid(j, i)
            edges.append((y, bottom[i - 1]))
            edges.append((y, bottom[2 * half - i]))
        for v, (r, c) in cell.items():
            if c > half:
                cell[v] = (2 * height + 2 - r, 2 * half + 1 - c)
        for i in range(1, half + 1):
            cell[vid(j, i)] = (height + 1, i)
        height = 2 * height + 1
        top, bottom = top[:half], top[half:][::-1]
        _assert_contiguous_level_one(top, meta)
        _assert_contiguous_level_one(bottom, meta)

    terminals = tuple((vid(j, 1), vid(j, lengths[j - 1])) for j in range(1, k + 1))
    default = p == 2 ** k - 1
    notes = ()
    if k == 1 and p == 1:
        notes = ("degenerate instance: single vertex with s_1 = t_1",)
    return DppInstance(
        graph=Graph(n, edges),
        terminals=terminals,
        name=f"G_{k}" if default else f"G_{k},{p}",
        k=k,
        p=p,
        meta=tuple(meta),
        coords=tuple(cell[v] for v in range(n)),
        notes=notes,
    )


def expected_edge_count(k: int, p: int | None = None) -> int:
    """Edge count from the recursion ``E(k+1, p) = E(k, 2p) + 3p - 1``."""
    if p is None:
        p = 2 ** k - 1
    if k == 1:
        return p - 1
    return expected_edge_count(k - 1, 2 * p) + 3 * p - 1


def canonical_linkage(inst: DppInstance) -> Linkage:
    """The linkage whose ``j``-th path is the level-``j`` row in index order."""
    if inst.meta is None:
        raise InputError(f"instance {inst.name!r} carries no construction metadata")
    levels: dict[int, list[tuple[int, int]]] = {}
    for v, (level, index) in enumerate(inst.meta):
        levels.setdefault(level, []).append((index, v))
    paths = tuple(
        tuple(v for _, v in sorted(levels[j])) for j in range(1, len(levels) + 1)
    )
    validate_linkage(inst.graph, paths)
    return paths


def grid_certificate(inst: DppInstance) -> GridCertificate:
    """Grid subgraph witness carried by ``inst`` (the fold map for family instances)."""
    if inst.coords is None:
        raise InputError(f"instance {inst.name!r} carries no grid coordinates")
    m = max(r for r, _ in inst.coords)
    n = max(c for _, c in inst.coords)
    cell = {}
    for v, rc in enumerate(inst.coords):
        if rc in cell:
            raise CertificateError(f"cell {rc} assigned to vertices {cell[rc]} and {v}")
        cell[tuple(rc)] = v
    cert = GridCertificate(m, n, cell)
    cert.validate(inst.graph, require_bijection=inst.is_family)
    return cert


def non_grid_chords(inst: DppInstance, cert: GridCertificate) -> list[tuple[tuple[int, int], int]]:
    """Edges that are not grid edges under ``cert``, each with its column.

    Raises :class:`CertificateError` if such an edge touches two columns.
    """
    pos = cert.inverse()
    grid = {tuple(sorted(e)) for e in cert.grid_edges()}
    chords = []
    for e in inst.graph.sorted_edges():
        if e in grid:
            continue
        u, v = e
        if u not in pos or v not in pos:
            raise CertificateError(f"edge {e} leaves the certified grid")
        if pos[u][1] != pos[v][1]:
            raise CertificateError(
                f"edge {e} joins columns {pos[u][1]} and {pos[v][1]}"
            )
        chords.append((e, pos[u][1]))
    return chords


def control_instance(name: str) -> DppInstance:
    """Small instances with several solutions or none, used as negative controls."""
    if name == "grid-one-pair":
        terminals = ((0, 2),)
    elif name == "grid-two-pair-loose":
        terminals = ((0, 6), (2, 8))
    elif name == "path-infeasible":
        g = make_grid(1, 5)
        return DppInstance(
            g, ((0, 4), (1, 3)), name=name, coords=tuple((1, c) for c in range(1, 6))
        )
    else:
        raise InputError(f"unknown control instance {name!r}; expected one of {CONTROL_NAMES}")
    coords = tuple((r, c) for r in range(1, 4) for c in range(1, 4))
    return DppInstance(make_grid(3, 3), terminals, name=name, coords=coords)


def without_vertex(inst: DppInstance, v: int) -> tuple[DppInstance, dict[int, int]]:
    """``inst`` with non-terminal ``v`` deleted; construction metadata is dropped."""
    if v in inst.terminal_set():
        raise InputError(f"vertex {v} is a terminal")
    g, id_map = delete_vertex(inst.graph, v)
    terminals = tuple((id_map[s], id_map[t]) for s, t in inst.terminals)
    return DppInstance(g, terminals, name=f"{inst.name}-v{v}"), id_map


def source_contraction(inst: DppInstance) -> tuple[Graph, tuple[int, int]]:
    """Contract the edge joining ``s_1`` to its level-1 neighbour."""
    if inst.meta is None:
        raise InputError(f"instance {inst.name!r} carries no construction metadata")
    s1 = inst.terminals[0][0]
    nbrs = [w for w in inst.graph.adj[s1] if inst.meta[w][0] == 1]
    if not nbrs:
        raise InputError(f"s_1 of {inst.name!r} has no level-1 neighbour")
    e = (s1, min(nbrs))
    g, _ = contract_edge(inst.graph, e)
    return g, e
