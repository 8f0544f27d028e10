"""Serialization: the JSON instance format, DOT and DIMACS exports, and run
reports. All writers are deterministic for a given input.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .errors import InputError
from .family import DppInstance
from .graph import Graph

SCHEMA_VERSION = 1
REPORT_VERSION = 1


class InstanceFormatError(InputError):
    """A malformed instance file; ``location`` points at the first violation."""

    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("vitallink").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def instance_to_dict(inst: DppInstance) -> dict:
    vertices = []
    for v in inst.graph.vertices():
        level, index = inst.meta[v] if inst.meta is not None else (None, None)
        row, col = inst.coords[v] if inst.coords is not None else (None, None)
        vertices.append({"id": v, "level": level, "index": index, "row": row, "col": col})
    return {
        "schema_version": SCHEMA_VERSION,
        "name": inst.name,
        "k": inst.k,
        "p": inst.p,
        "notes": list(inst.notes),
        "vertices": vertices,
        "edges": [list(e) for e in inst.graph.sorted_edges()],
        "terminals": [list(pair) for pair in inst.terminals],
    }


def dumps_instance(inst: DppInstance) -> str:
    """Instance file text: one vertex or edge record per line, keys sorted."""
    data = instance_to_dict(inst)

    def rows(key):
        items = [json.dumps(x, sort_keys=True) for x in data[key]]
        if not items:
            return "[]"
        return "[\n    " + ",\n    ".join(items) + "\n  ]"

    lines = []
    for key in sorted(data):
        if key in ("vertices", "edges", "terminals"):
            lines.append(f'  "{key}": {rows(key)}')
        else:
            lines.append(f'  "{key}": {json.dumps(data[key], sort_keys=True)}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


def instance_from_dict(data) -> DppInstance:
    """Build an instance from parsed JSON, raising :class:`InstanceFormatError`."""
    validator = jsonschema.Draft202012Validator(load_schema("instance"))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
        raise InstanceFormatError(where or "<root>", err.message)

    verts = data["vertices"]
    n = len(verts)
    for i, rec in enumerate(verts):
        if rec["id"] != i:
            raise InstanceFormatError(f".vertices[{i}].id", f"expected id {i}, found {rec['id']}")
    meta = _optional_pairs(verts, "level", "index")
    coords = _optional_pairs(verts, "row", "col")
    if meta is not None and list(meta) != sorted(meta):
        raise InstanceFormatError(".vertices", "vertex ids are not sorted by (level, index)")

    edges = [tuple(e) for e in data["edges"]]
    for i, (u, v) in enumerate(edges):
        if not u < v:
            raise InstanceFormatError(f".edges[{i}]", "smaller id must come first")
        if v >= n:
            raise InstanceFormatError(f".edges[{i}]", f"id {v} is not a vertex")
    for i in range(1, len(edges)):
        if edges[i - 1] >= edges[i]:
            raise InstanceFormatError(f".edges[{i}]", "edges are not strictly sorted")
    try:
        return DppInstance(
            graph=Graph(n, edges),
            terminals=tuple(tuple(pair) for pair in data["terminals"]),
            name=data["name"],
            k=data["k"],
            p=data["p"],
            meta=meta,
            coords=coords,
            notes=tuple(data.get("notes", ())),
        )
    except InputError as exc:
        raise InstanceFormatError(".terminals", str(exc)) from exc


def _optional_pairs(verts, a, b):
    present = [rec[a] is not None and rec[b] is not None for rec in verts]
    if not any(present):
        return None
    for i, ok in enumerate(present):
        if not ok:
            raise InstanceFormatError(f".vertices[{i}]", f"missing {a}/{b} while other vertices have them")
    return tuple((rec[a], rec[b]) for rec in verts)


def loads_instance(text: str) -> DppInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return instance_from_dict(data)


def read_instance(path) -> DppInstance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def write_instance(inst: DppInstance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(inst))


def to_dimacs(inst: DppInstance) -> str:
    lines = [f"p edge {inst.graph.n} {inst.graph.m}"]
    for i, (s, t) in enumerate(inst.terminals, start=1):
        lines.append(f"c pair {i} {s + 1} {t + 1}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in inst.graph.sorted_edges())
    return "\n".join(lines) + "\n"


def to_dot(inst: DppInstance) -> str:
    roles: dict[int, list[str]] = {}
    for i, (s, t) in enumerate(inst.terminals, start=1):
        roles.setdefault(s, []).append(f"s{i}")
        roles.setdefault(t, []).append(f"t{i}")
    lines = [f"graph {json.dumps(inst.name or 'instance')} {{"]
    for v in inst.graph.vertices():
        if inst.meta is not None:
            label = "L{}.{}".format(*inst.meta[v])
        else:
            label = f"v{v}"
        attrs = [f'label="{label}"']
        if inst.coords is not None:
            r, c = inst.coords[v]
            attrs.append(f'pos="{c},{-r}!"')
        if v in roles:
            attrs.append(f'xlabel="{"=".join(roles[v])}"')
            attrs.append("shape=doublecircle")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    lines.extend(f"  {u} -- {v};" for u, v in inst.graph.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def make_report(instance, operation, parameters, result, verdict, stats=None) -> dict:
    report = {
        "report_version": REPORT_VERSION,
        "instance": instance,
        "operation": operation,
        "parameters": parameters,
        "result": result,
        "verdict": verdict,
    }
    if stats is not None:
        report["stats"] = stats
    jsonschema.validate(report, load_schema("report"))
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
