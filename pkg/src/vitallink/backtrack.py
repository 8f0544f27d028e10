"""Backtracking search for disjoint paths.

Pairs are routed in index order. Path ``i`` grows one vertex at a time from
``s_i``, trying neighbours in increasing id order, so solutions come out in
lexicographic order of their id sequences. A branch is cut when some pending
pair can no longer reach its partner through free vertices, or when an
optional column-cut test fails.
"""

from __future__ import annotations

import time
from collections import deque

from .errors import InputError
from .family import DppInstance, GridCertificate


class _Stop(Exception):
    pass


class ColumnCutPrune:
    """Menger-style pruning test for instances certified as a full grid.

    When every edge stays within one grid column or joins adjacent columns,
    each column separates the columns left of it from those right of it.
    A pending pair whose ends lie on opposite sides must therefore pass
    through a free vertex of that column, and distinct pairs need distinct
    vertices.
    """

    def __init__(self, inst: DppInstance, cert: GridCertificate):
        pos = cert.inverse()
        if len(pos) != inst.graph.n:
            raise InputError("column-cut pruning needs a certificate covering every vertex")
        for u, v in inst.graph.edges:
            if abs(pos[u][1] - pos[v][1]) > 1:
                raise InputError(f"edge {(u, v)} skips a column; columns are not separators")
        self.col = [pos[v][1] for v in range(inst.graph.n)]
        self.columns = [cert.column(c) for c in range(1, cert.n + 1)]

    def __call__(self, occupied, pending) -> bool:
        """True if the partial routing can be discarded.

        ``occupied`` holds vertices already used by routed paths; ``pending``
        lists the ``(head, target)`` endpoints of pairs still to be routed.
        """
        reserved = {v for pair in pending for v in pair}
        spans = [sorted((self.col[a], self.col[b])) for a, b in pending]
        for c, members in enumerate(self.columns, start=1):
            required = sum(1 for lo, hi in spans if lo < c < hi)
            if not required:
                continue
            free = sum(1 for v in members if v not in occupied and v not in reserved)
            if free < required:
                return True
        return False


def column_cut_prune(inst: DppInstance, cert: GridCertificate) -> ColumnCutPrune:
    return ColumnCutPrune(inst, cert)


def backtrack_solve(inst: DppInstance, mode: str, limit: int, budget, prune=None):
    """Run the search; returns ``(count, solutions, complete, nodes)``.

    ``mode`` is ``"decide"`` (stop at the first solution), ``"count"`` or
    ``"enumerate"`` (count everything, keep the first ``limit`` solutions).
    """
    g = inst.graph
    pairs = inst.terminals
    k = len(pairs)
    owner = {}
    for i, (s, t) in enumerate(pairs):
        owner[s] = i
        owner[t] = i
    used = set()
    paths: list[list[int]] = [[] for _ in range(k)]
    solutions = []
    state = {"count": 0, "nodes": 0, "complete": True}
    deadline = None if budget.time_budget is None else time.monotonic() + budget.time_budget

    def connected(a, b, i):
        if a == b:
            return True
        seen = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for w in g.adj[x]:
                if w == b:
                    return True
                if w in seen or w in used or owner.get(w, i) != i:
                    continue
                seen.add(w)
                queue.append(w)
        return False

    def feasible(i, head):
        if not connected(head, pairs[i][1], i):
            return False
        for j in range(i + 1, k):
            if not connected(pairs[j][0], pairs[j][1], j):
                return False
        if prune is not None:
            pending = [(head, pairs[i][1])] + [pairs[j] for j in range(i + 1, k)]
            if prune(used, pending):
                return False
        return True

    def record():
        state["count"] += 1
        if mode != "count" and len(solutions) < limit:
            solutions.append(tuple(tuple(p) for p in paths))
        if mode == "decide":
            raise _Stop

    def start(i):
        if i == k:
            record()
            return
        s, t = pairs[i]
        paths[i].append(s)
        used.add(s)
        if s == t:
            start(i + 1)
        elif feasible(i, s):
            extend(i, s)
        used.discard(s)
        paths[i].pop()

    def extend(i, head):
        state["nodes"] += 1
        if state["nodes"] > budget.node_budget or (
            deadline is not None and time.monotonic() > deadline
        ):
            state["complete"] = False
            raise _Stop
        target = pairs[i][1]
        for w in sorted(g.adj[head]):
            if w in used or owner.get(w, i) != i:
                continue
            if owner.get(w) == i and w != target:
                continue
            paths[i].append(w)
            used.add(w)
            if w == target:
                start(i + 1)
            elif feasible(i, w):
                extend(i, w)
            used.discard(w)
            paths[i].pop()

    try:
        start(0)
    except _Stop:
        pass
    return state["count"], solutions, state["complete"], state["nodes"]
