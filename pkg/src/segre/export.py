"""JSON and CSV serialisation of points, lines, spreads, orbits and incidences.

Tensors are written as ``E:`` / ``U:`` followed by one of ``0 1 w W`` per
coordinate; lines as the pair of their two smallest points.  Every writer
emits objects in canonical order, so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json

from .orbits import OrbitPartition
from .space import Line, Tensor, index_str
from .varieties import IncidenceStructure, InvariantBasis, SpreadLine


def encode(obj):
    if isinstance(obj, Tensor):
        return str(obj)
    if isinstance(obj, Line):
        return [str(obj.first), str(obj.second)]
    if isinstance(obj, SpreadLine):
        return {"line": encode(obj.line), "contact": str(obj.contact_even), "class_r": obj.class_r}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _flat(obj) -> list:
    """One CSV row (without the leading index) for an object."""
    if isinstance(obj, Tensor):
        return [str(obj)]
    if isinstance(obj, Line):
        return [str(obj.first), str(obj.second)]
    if isinstance(obj, SpreadLine):
        return [str(obj.line.first), str(obj.line.second), str(obj.contact_even), obj.class_r]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


_HEADERS = {
    Tensor: ["point"],
    Line: ["first", "second"],
    SpreadLine: ["first", "second", "contact", "class_r"],
}


def basis_rows(basis: InvariantBasis) -> list[dict]:
    return [
        {
            "index": index_str(i, basis.m),
            "parity": "even" if i in basis.even else "odd",
            "point": str(p),
        }
        for i, p in enumerate(basis.points)
    ]


def _meta(m: int, field: int, obj: str) -> dict:
    return {"m": m, "field": field, "object": obj}


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


def objects_json(m: int, field: int, obj: str, items) -> str:
    if isinstance(items, InvariantBasis):
        rows = basis_rows(items)
    else:
        rows = [encode(x) for x in items]
    return to_json({"meta": _meta(m, field, obj), "items": rows})


def objects_csv(items) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(items, InvariantBasis):
        w.writerow(["index", "parity", "point"])
        for row in basis_rows(items):
            w.writerow([row["index"], row["parity"], row["point"]])
        return buf.getvalue()
    items = list(items)
    header = _HEADERS[type(items[0])] if items else ["point"]
    w.writerow(["n"] + header)
    for n, x in enumerate(items):
        w.writerow([n] + _flat(x))
    return buf.getvalue()


def orbits_json(m: int, field: int, obj: str, part: OrbitPartition) -> str:
    return to_json(
        {
            "meta": _meta(m, field, obj),
            "items": [{"object": encode(o), "orbit_id": lab} for o, lab in zip(part.objects, part.labels)],
            "summary": [
                {"orbit_id": i, "size": size, "representative": encode(rep)}
                for i, (size, rep) in enumerate(zip(part.orbit_sizes, part.representatives))
            ],
        }
    )


def orbits_csv(part: OrbitPartition) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["object", "orbit_id"])
    for o, lab in zip(part.objects, part.labels):
        w.writerow([" ".join(_flat(o)[:2]) if not isinstance(o, Tensor) else str(o), lab])
    return buf.getvalue()


def incidence_json(m: int, obj: str, inc: IncidenceStructure) -> str:
    return to_json(
        {
            "meta": _meta(m, 4, obj),
            "points": [str(p) for p in inc.points],
            "lines": [encode(ln) for ln in inc.lines],
            "items": [list(e) for e in inc.incidences],
        }
    )


def incidence_csv(inc: IncidenceStructure) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["point", "line_first", "line_second"])
    for i, j in inc.incidences:
        ln = inc.lines[j]
        w.writerow([str(inc.points[i]), str(ln.first), str(ln.second)])
    return buf.getvalue()
