"""Disjoint-paths counting by dynamic programming over a path decomposition.

The decomposition is turned into a sequence of introduce-vertex,
introduce-edge and forget-vertex steps. Each edge is decided (taken or not)
just before the first of its endpoints is forgotten. A state records, for
every vertex of the current frontier, one code:

* ``0`` unused so far (non-terminals only),
* ``1`` saturated: an interior path vertex, a terminal that already has its
  single edge, or a terminal with ``s = t``,
* ``w + 2`` an open fragment end whose other end is frontier vertex ``w``,
* ``-(i + 1)`` an open fragment end whose other end is a terminal of pair
  ``i``; for a terminal vertex with no edge yet this is its own pair.

A non-terminal may only be forgotten unused or saturated, and a terminal
only saturated, so fragment ends that leave the frontier are always
terminals. Joining two fragments whose far ends are terminals is allowed
only when both belong to the same pair, which then is complete. A taken edge
set surviving to the end is exactly one solution, so counts are exact.
"""

from __future__ import annotations

import time
from bisect import bisect_left

from .errors import InputError, ResourceLimitError
from .family import DppInstance
from .width import TreeDecomposition, validate_decomposition


def decomposition_steps(g, d: TreeDecomposition):
    """Introduce/edge/forget steps for a validated path decomposition."""
    if d.shape != "path":
        raise InputError("the DP engine consumes path decompositions only")
    validate_decomposition(g, d)
    steps = []
    frontier: set[int] = set()
    done_edges = set()
    for bag in list(d.bags) + [frozenset()]:
        for x in sorted(frontier - bag):
            for w in sorted(g.adj[x]):
                e = (min(x, w), max(x, w))
                if w in frontier and e not in done_edges:
                    done_edges.add(e)
                    steps.append(("edge", x, w))
            steps.append(("forget", x))
            frontier.discard(x)
        for x in sorted(bag - frontier):
            steps.append(("intro", x))
            frontier.add(x)
    assert len(done_edges) == g.m
    return steps


def _far(code, v):
    """Far end of the fragment ending at frontier vertex ``v``."""
    if code == 0:
        return ("v", v)
    if code >= 2:
        return ("v", code - 2)
    return ("t", -code - 1)


def tddp_solve(inst: DppInstance, d: TreeDecomposition, mode: str, limit: int, budget):
    """Run the DP; returns ``(count, solutions, complete, peak_states)``.

    In ``"enumerate"`` mode every state carries its partial edge sets, which
    are bounded by ``budget.state_budget`` in total.
    """
    g = inst.graph
    width = d.width
    if width > budget.max_width:
        raise ResourceLimitError(
            f"decomposition width {width} exceeds the DP width limit {budget.max_width}"
        )
    steps = decomposition_steps(g, d)
    pair_of = {}
    single = set()
    for i, (s, t) in enumerate(inst.terminals):
        pair_of[s] = i
        pair_of[t] = i
        if s == t:
            single.add(s)
    enumerate_mode = mode == "enumerate"
    deadline = None if budget.time_budget is None else time.monotonic() + budget.time_budget

    order: list[int] = []
    table: dict = {(): [frozenset()] if enumerate_mode else 1}
    peak = 1

    def add(target, key, value):
        if enumerate_mode:
            target.setdefault(key, []).extend(value)
        else:
            target[key] = target.get(key, 0) + value

    for step in steps:
        kind = step[0]
        new: dict = {}
        if kind == "intro":
            x = step[1]
            at = bisect_left(order, x)
            if x in single:
                code = 1
            elif x in pair_of:
                code = -(pair_of[x] + 1)
            else:
                code = 0
            for key, value in table.items():
                new[key[:at] + (code,) + key[at:]] = value
            order.insert(at, x)
        elif kind == "forget":
            x = step[1]
            at = order.index(x)
            for key, value in table.items():
                if key[at] in (0, 1):
                    add(new, key[:at] + key[at + 1:], value)
            order.pop(at)
        else:
            _, a, b = step
            pa, pb = order.index(a), order.index(b)
            pos = {v: i for i, v in enumerate(order)}
            edge = (min(a, b), max(a, b))
            for key, value in table.items():
                add(new, key, value)
                ca, cb = key[pa], key[pb]
                if ca == 1 or cb == 1 or ca == b + 2:
                    continue
                fa, fb = _far(ca, a), _far(cb, b)
                nk = list(key)
                if ca != 0:
                    nk[pa] = 1
                if cb != 0:
                    nk[pb] = 1
                if fa[0] == "t" and fb[0] == "t":
                    if fa[1] != fb[1]:
                        continue
                elif fa[0] == "t":
                    nk[pos[fb[1]]] = -(fa[1] + 1)
                elif fb[0] == "t":
                    nk[pos[fa[1]]] = -(fb[1] + 1)
                else:
                    nk[pos[fa[1]]] = fb[1] + 2
                    nk[pos[fb[1]]] = fa[1] + 2
                if enumerate_mode:
                    value = [part | {edge} for part in value]
                add(new, tuple(nk), value)
        table = new
        size = len(table)
        if enumerate_mode:
            size = sum(len(v) for v in table.values())
        peak = max(peak, size)
        if size > budget.state_budget or (deadline is not None and time.monotonic() > deadline):
            return None, [], False, peak
        if mode == "decide":
            table = {key: 1 for key in table}

    final = table.get((), [] if enumerate_mode else 0)
    if not enumerate_mode:
        return final, [], True, peak
    solutions = sorted(_edges_to_linkage(inst, part) for part in final)
    return len(solutions), solutions[:limit], True, peak


def _edges_to_linkage(inst: DppInstance, edges):
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    paths = []
    for s, t in inst.terminals:
        path = [s]
        prev, cur = None, s
        while cur != t:
            nxt = [w for w in adj[cur] if w != prev]
            prev, cur = cur, nxt[0]
            path.append(cur)
        paths.append(tuple(path))
    return tuple(paths)
