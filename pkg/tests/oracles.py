"""Brute-force reference implementations used to cross-check the package.

These deliberately share no code with ``vitallink`` beyond the Graph value.
"""

from itertools import combinations, permutations, product

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_force_solutions(g, terminals):
    """All solutions by taking the product of per-pair simple path lists."""
    h = to_nx(g)
    terms = {v for pair in terminals for v in pair}
    per_pair = []
    for s, t in terminals:
        if s == t:
            per_pair.append([(s,)])
            continue
        others = terms - {s, t}
        sub = h.subgraph(v for v in h if v not in others)
        per_pair.append([tuple(p) for p in nx.all_simple_paths(sub, s, t)])
    sols = []
    for combo in product(*per_pair):
        seen = set()
        ok = True
        for p in combo:
            if seen & set(p):
                ok = False
                break
            seen |= set(p)
        if ok:
            sols.append(tuple(combo))
    return sorted(sols)


def brute_force_min_cut(g, a, b):
    a, b = set(a), set(b)
    h = to_nx(g)
    rest = [v for v in range(g.n) if v not in a | b]
    for size in range(len(rest) + 1):
        for cut in combinations(rest, size):
            sub = h.subgraph(v for v in h if v not in cut)
            if not any(nx.has_path(sub, x, y) for x in a for y in b):
                return size
    return None


def brute_force_treewidth(g):
    """Minimum over all elimination orderings of the max eliminated degree."""
    if g.n == 0:
        return -1
    best = g.n
    for order in permutations(range(g.n)):
        adj = [set(a) for a in g.adj]
        alive = set(range(g.n))
        width = 0
        for v in order:
            nb = adj[v] & alive
            width = max(width, len(nb))
            if width >= best:
                break
            for x in nb:
                adj[x] |= nb - {x}
            alive.discard(v)
        best = min(best, width)
    return best


def brute_force_pathwidth(g):
    """Minimum over all linear orders of the vertex separation."""
    if g.n == 0:
        return -1
    best = g.n
    for order in permutations(range(g.n)):
        placed = set()
        sep = 0
        for v in order:
            placed.add(v)
            sep = max(sep, sum(1 for u in placed if g.adj[u] - placed))
        best = min(best, sep)
    return best
