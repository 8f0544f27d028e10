"""Exact decision, counting and enumeration for disjoint paths instances,
plus the vital-linkage check and the irrelevant-vertex scan built on them.

Two independent engines are available: ``"backtrack"`` (see
:mod:`vitallink.backtrack`) and ``"td-dp"`` (see :mod:`vitallink.tddp`).
Solutions are linkages with path ``i`` read from ``s_i`` to ``t_i``; two
solutions differ iff some path's vertex sequence differs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .backtrack import ColumnCutPrune, backtrack_solve
from .errors import CertificateError, InputError, ResourceLimitError
from .family import DppInstance, grid_certificate, non_grid_chords, without_vertex
from .graph import Linkage, validate_linkage
from .tddp import tddp_solve
from .width import (
    EXACT_VERTEX_CAP,
    TreeDecomposition,
    column_sweep_decomposition,
    exact_pathwidth,
    restrict_decomposition,
)

MODES = ("decide", "count", "enumerate")
ENGINES = ("backtrack", "td-dp", "auto")

#: Instances up to this many vertices go to the backtracking engine under ``"auto"``.
AUTO_BACKTRACK_MAX_VERTICES = 16


@dataclass(frozen=True)
class Budget:
    """Resource caps. Exceeding one yields a capped report, never a wrong count.

    ``max_width`` is checked up front: the DP refuses wider decompositions
    with :class:`ResourceLimitError`.
    """

    node_budget: int = 20_000_000
    state_budget: int = 2_000_000
    time_budget: float | None = None
    max_width: int = 10


@dataclass
class SolveReport:
    solvable: bool | None
    count: int | str
    engine: str
    mode: str
    solutions: list | None = None
    complete: bool = True
    stats: dict = field(default_factory=dict)

    @property
    def capped(self) -> bool:
        return not self.complete


@dataclass(frozen=True)
class VitalResult:
    status: str  # "vital", "not-spanning", "not-unique" or "capped"
    witness: Linkage | None = None
    count: int | str | None = None


@dataclass(frozen=True)
class ScanResult:
    irrelevant: frozenset
    complete: bool
    base_solvable: bool | None
    checked: int


def family_decomposition(inst: DppInstance) -> TreeDecomposition | None:
    """Column-sweep decomposition for square family instances, else ``None``."""
    if not inst.is_family or inst.p != 2 ** inst.k - 1:
        return None
    return column_sweep_decomposition(inst, grid_certificate(inst))


def decomposition_for(inst: DppInstance) -> TreeDecomposition:
    d = family_decomposition(inst)
    if d is not None:
        return d
    if inst.graph.n <= EXACT_VERTEX_CAP:
        return exact_pathwidth(inst.graph, with_decomposition=True)[1]
    raise ResourceLimitError(
        f"no path decomposition available for {inst.name!r} ({inst.graph.n} vertices)"
    )


def default_prune(inst: DppInstance) -> ColumnCutPrune | None:
    if inst.coords is None:
        return None
    try:
        cert = grid_certificate(inst)
        non_grid_chords(inst, cert)
        return ColumnCutPrune(inst, cert)
    except (CertificateError, InputError):
        return None


def solve(
    inst: DppInstance,
    mode: str = "count",
    engine: str = "auto",
    limit: int = 10,
    budget: Budget | None = None,
    decomposition: TreeDecomposition | None = None,
    prune: bool | ColumnCutPrune | None = True,
) -> SolveReport:
    """Decide, count or enumerate the solutions of ``inst``.

    ``prune=True`` enables column-cut pruning in the backtracking engine when
    the instance carries a suitable grid certificate.
    """
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")
    if engine not in ENGINES:
        raise InputError(f"engine must be one of {ENGINES}, got {engine!r}")
    if mode == "enumerate" and limit < 1:
        raise InputError("enumeration limit must be positive")
    budget = budget or Budget()
    if engine == "auto":
        engine = "backtrack" if inst.graph.n <= AUTO_BACKTRACK_MAX_VERTICES else "td-dp"

    start = time.perf_counter()
    stats = {}
    if engine == "backtrack":
        if prune is True:
            prune = default_prune(inst)
        elif prune is False:
            prune = None
        count, solutions, complete, nodes = backtrack_solve(inst, mode, limit, budget, prune)
        stats["nodes_expanded"] = nodes
        stats["column_cut_prune"] = prune is not None
    else:
        d = decomposition if decomposition is not None else decomposition_for(inst)
        count, solutions, complete, peak = tddp_solve(inst, d, mode, limit, budget)
        stats["peak_states"] = peak
        stats["decomposition_width"] = d.width
    stats["elapsed_s"] = round(time.perf_counter() - start, 6)

    if complete:
        solvable = count > 0
        if mode == "decide":
            count = min(count, 1)
    else:
        solvable = True if solutions or (count or 0) > 0 else None
        count = "capped"
    for sol in solutions:
        pattern = validate_linkage(inst.graph, sol)
        assert pattern == inst.terminal_pattern()
    return SolveReport(
        solvable=solvable,
        count=count,
        engine=engine,
        mode=mode,
        solutions=list(solutions) if mode != "count" else None,
        complete=complete,
        stats=stats,
    )


def orient(inst: DppInstance, paths) -> Linkage:
    """Order and direct ``paths`` as pair 1..k, each from ``s_i`` to ``t_i``."""
    by_ends = {}
    for p in paths:
        p = tuple(p)
        by_ends[frozenset((p[0], p[-1]))] = p
    out = []
    for s, t in inst.terminals:
        p = by_ends[frozenset((s, t))]
        out.append(p if p[0] == s else p[::-1])
    return tuple(out)


def vital_check(
    inst: DppInstance, linkage, engine: str = "auto", budget: Budget | None = None
) -> VitalResult:
    """Is ``linkage`` the unique linkage with its pattern, and does it span?

    Uniqueness is tested against all linkages with the terminal pattern,
    spanning or not, which is exactly the solution count of the instance.
    """
    pattern = validate_linkage(inst.graph, linkage)
    if pattern != inst.terminal_pattern():
        raise InputError("linkage pattern differs from the instance's terminal pattern")
    linkage = orient(inst, linkage)
    if sum(len(p) for p in linkage) != inst.graph.n:
        return VitalResult("not-spanning")
    report = solve(inst, "enumerate", engine, limit=2, budget=budget)
    if report.capped:
        return VitalResult("capped", count="capped")
    if report.count == 1:
        assert report.solutions[0] == linkage
        return VitalResult("vital", count=1)
    witness = next(s for s in report.solutions if s != linkage)
    return VitalResult("not-unique", witness=witness, count=report.count)


def irrelevant_scan(
    inst: DppInstance, engine: str = "auto", budget: Budget | None = None
) -> ScanResult:
    """Non-terminals ``v`` whose deletion leaves solvability unchanged."""
    budget = budget or Budget()
    if engine == "auto":
        engine = "backtrack" if inst.graph.n <= AUTO_BACKTRACK_MAX_VERTICES else "td-dp"
    base_d = decomposition_for(inst) if engine == "td-dp" else None
    base = solve(inst, "decide", engine, budget=budget, decomposition=base_d)
    if base.capped:
        return ScanResult(frozenset(), False, None, 0)
    irrelevant = set()
    complete = True
    checked = 0
    terminals = inst.terminal_set()
    for v in inst.graph.vertices():
        if v in terminals:
            continue
        sub, id_map = without_vertex(inst, v)
        d = restrict_decomposition(base_d, id_map) if base_d is not None else None
        rep = solve(sub, "decide", engine, budget=budget, decomposition=d)
        checked += 1
        if rep.capped:
            complete = False
            continue
        if rep.solvable == base.solvable:
            irrelevant.add(v)
    return ScanResult(frozenset(irrelevant), complete, base.solvable, checked)
