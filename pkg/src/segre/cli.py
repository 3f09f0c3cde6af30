"""Command line front end.

    segre enumerate --m 3 --field 2 --object quadric [--list]
    segre orbits --m 3 --object points [--export out.json --format json]
    segre verify --m 3 --all
    segre export --m 3 --field 4 --object spread --format json --export spread.json

Counts are printed as ``object m field count``.  Exit codes: 0 success,
1 verification failure, 2 usage error (including unsupported sizes).
"""

from __future__ import annotations

import argparse
import sys

from . import export
from .checks import CHECKS, CheckError, checks_for, run_checks
from .orbits import point_orbits, spread_line_orbits
from .space import projective_points
from .varieties import (
    base_lines,
    distinguished_tangents,
    hermitian_points,
    hermitian_substructure,
    invariant_basis,
    line_spread,
    quadric_points,
    segre_points,
)

OBJECTS = ("points", "segre", "quadric", "hermitian", "basis", "base-lines", "spread", "tangents")
EXPORT_ONLY = ("hermitian-substructure", "point-orbits", "spread-line-orbits")
ORBIT_OBJECTS = ("points", "spread-lines")


class UsageError(Exception):
    pass


def collect(m: int, field: int, obj: str):
    """The objects named ``obj`` at (m, field), in canonical order."""
    if m < 1:
        raise UsageError(f"m must be positive, got {m}")
    if obj in ("hermitian", "basis", "base-lines", "spread") and field != 4:
        raise UsageError(f"object {obj!r} requires --field 4")
    if obj == "tangents" and field != 2:
        raise UsageError("object 'tangents' requires --field 2")
    if obj == "points":
        return sorted(projective_points(m, field), key=lambda t: t.key)
    if obj == "segre":
        return segre_points(m, field)
    if obj == "quadric":
        return quadric_points(m, field)
    if obj == "hermitian":
        return hermitian_points(m)
    if obj == "basis":
        return invariant_basis(m)
    if obj == "base-lines":
        return sorted(base_lines(m), key=lambda l: (l.first.key, l.second.key))
    if obj == "spread":
        return line_spread(m)
    if obj == "tangents":
        if m < 2:
            raise UsageError("distinguished tangents need m >= 2")
        return sorted(distinguished_tangents(m), key=lambda l: (l.first.key, l.second.key))
    raise UsageError(f"unknown object {obj!r}")


def _listing(items) -> list[str]:
    if hasattr(items, "points") and hasattr(items, "span_even"):
        return [f"{row['index']} {row['parity']} {row['point']}" for row in export.basis_rows(items)]
    out = []
    for x in items:
        enc = export.encode(x)
        if isinstance(enc, dict):
            out.append(f"{' '.join(enc['line'])} {enc['contact']} {enc['class_r']}")
        elif isinstance(enc, list):
            out.append(" ".join(enc))
        else:
            out.append(enc)
    return out


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _render(m: int, field: int, obj: str, fmt: str) -> str:
    if obj == "hermitian-substructure":
        inc = hermitian_substructure(m)
        return export.incidence_json(m, obj, inc) if fmt == "json" else export.incidence_csv(inc)
    if obj in ("point-orbits", "spread-line-orbits"):
        part, field = (point_orbits(m), 2) if obj == "point-orbits" else (spread_line_orbits(m), 4)
        return export.orbits_json(m, field, obj, part) if fmt == "json" else export.orbits_csv(part)
    items = collect(m, field, obj)
    return export.objects_json(m, field, obj, items) if fmt == "json" else export.objects_csv(items)


def cmd_enumerate(args) -> int:
    items = collect(args.m, args.field, args.object)
    count = len(items.points) if args.object == "basis" else len(items)
    print(f"{args.object} {args.m} {args.field} {count}")
    if args.list:
        for row in _listing(items):
            print(row)
    if args.export:
        _write(_render(args.m, args.field, args.object, args.format), args.export)
    return 0


def cmd_orbits(args) -> int:
    if args.object == "points":
        part, field, name = point_orbits(args.m), 2, "point-orbits"
    else:
        part, field, name = spread_line_orbits(args.m), 4, "spread-line-orbits"
    print(f"{name} {args.m} {field} {len(part)}")
    for i, (size, rep) in enumerate(zip(part.orbit_sizes, part.representatives)):
        print(f"orbit {i} {size} {' '.join(_listing([rep]))}")
    if args.export:
        text = export.orbits_json(args.m, field, name, part) if args.format == "json" else export.orbits_csv(part)
        _write(text, args.export)
    return 0


def cmd_verify(args) -> int:
    names = None if args.all else [args.check]
    if args.all:
        names = checks_for(args.m)
    report = run_checks(args.m, names)
    for name, ok, detail in report.checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    print(f"overall {'PASS' if report.overall else 'FAIL'} ({len(report.checks)} checks, m={args.m})")
    return 0 if report.overall else 1


def cmd_export(args) -> int:
    _write(_render(args.m, args.field, args.object, args.format), args.export)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segre", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="count (and list) points or lines")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--field", type=int, choices=(2, 4), default=2)
    p.add_argument("--object", choices=OBJECTS, required=True)
    p.add_argument("--list", action="store_true", help="print serialised objects")
    p.add_argument("--export", metavar="PATH")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("orbits", help="orbits of the stabiliser group")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--object", choices=ORBIT_OBJECTS, required=True)
    p.add_argument("--export", metavar="PATH")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("--m", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", choices=tuple(CHECKS), metavar="NAME")
    g.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write objects as JSON or CSV")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--field", type=int, choices=(2, 4), default=2)
    p.add_argument("--object", choices=OBJECTS + EXPORT_ONLY, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--export", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CheckError, ValueError) as exc:
        # SizeLimitError is a ValueError
        print(f"segre {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"segre {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
