"""Named verification checks run by ``segre verify``.

Each check takes ``m`` and returns ``(passed, detail)``.  The sample sizes here
are tuned for interactive use; the test suite runs the heavier versions.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .field import ELEMENTS, ZERO
from .forms import hermitian_form, polar_complement, quadratic_form, symplectic_form
from .orbits import (
    GL22,
    IndexAction,
    SHEAR,
    SWAP,
    classify_point,
    induced_index_action,
    orbit,
    point_orbits,
    sgn2,
    spread_line_orbits,
    stabiliser_generators,
)
from .space import (
    E,
    IDENTITY,
    U,
    Tensor,
    line,
    opposite,
    parity,
    projective_points,
    real_points_of_line,
    span_subspace,
)
from .varieties import (
    base_lines,
    class_r,
    distinguished_tangent,
    hermitian_substructure,
    invariant_basis,
    line_spread,
    meet_points,
    on_segre,
    quadric_points,
    segre_points,
    spread_line_through,
    spread_line_vs_quadric,
)

SEED = 20100101


@dataclass
class VerificationReport:
    m: int
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)


def random_tensor(m: int, rng: random.Random, q: int = 4) -> Tensor:
    n = 1 << m
    return Tensor(m, rng.getrandbits(n), rng.getrandbits(n) if q == 4 else 0, E)


def _tensors(m: int, samples: int, rng: random.Random) -> list[Tensor]:
    """All GF(2) tensors for m <= 3, plus random GF(4) tensors."""
    out = [Tensor(m, lo, 0) for lo in range(1 << (1 << m))] if m <= 3 else []
    return out + [random_tensor(m, rng) for _ in range(samples)]


# -- forms ----------------------------------------------------------------------

def check_polarization(m):
    rng = random.Random(SEED)
    n = 1 << m
    pairs = []
    if m <= 3:
        vals = range(1 << n)
        pairs = [(Tensor(m, a), Tensor(m, b)) for a in vals for b in vals]
    pairs += [(random_tensor(m, rng), random_tensor(m, rng)) for _ in range(2000)]
    bad = sum(
        quadratic_form(x + y) ^ quadratic_form(x) ^ quadratic_form(y) != symplectic_form(x, y)
        for x, y in pairs
    )
    return bad == 0, f"{len(pairs)} pairs, {bad} failures"


def check_quadric_decomposables(m):
    fields = [2, 4] if m <= 3 else [2]
    bad = 0
    total = 0
    for q in fields:
        for p in segre_points(m, q):
            total += 1
            bad += quadratic_form(p) != ZERO
    return bad == 0, f"Q on {total} Segre points over GF{tuple(fields)}: {bad} nonzero"


def hyperbolic_count(m: int) -> int:
    n = 1 << (m - 1)
    return (2 ** n - 1) * (2 ** (n - 1) + 1)


def check_quadric_count(m):
    got = len(quadric_points(m, 2))
    return got == hyperbolic_count(m), f"|Q(2)| = {got}, expected {hyperbolic_count(m)}"


def check_witt_index(m):
    half = [Tensor.unit(m, i) for i in range(1 << (m - 1))]
    singular = all(quadratic_form(x) == ZERO for x in half) and all(
        symplectic_form(x, y) == ZERO for x in half for y in half
    )
    dim = span_subspace(half).dim
    ok = singular and dim == (1 << (m - 1)) - 1
    return ok, f"span(E_i, i_1 = 0) totally singular={singular}, projective dim {dim}"


def check_hermitian_self_polarity(m):
    us = [Tensor.unit(m, i, U) for i in range(1 << m)]
    bad = sum(
        hermitian_form(a, b) != (1 if i == j else 0)
        for i, a in enumerate(us) for j, b in enumerate(us)
    )
    return bad == 0, f"{len(us) ** 2} basis pairs, {bad} failures"


def check_polarity(m):
    b = invariant_basis(m)
    ok = True
    if m % 2:
        ok &= polar_complement(b.span_even) == b.span_even
        ok &= polar_complement(b.span_odd) == b.span_odd
    else:
        ok &= polar_complement(b.span_even) == b.span_odd
    for ln in base_lines(m):
        s = span_subspace([ln.first, ln.second])
        rest = span_subspace(
            [v for other in base_lines(m) if other != ln for v in (other.first, other.second)], m
        )
        ok &= polar_complement(s) == rest
    return ok, "parity spans and base lines under the fundamental polarity"


def _totally_singular(vectors) -> bool:
    return all(quadratic_form(v) == ZERO for v in vectors) and all(
        symplectic_form(a, b) == ZERO for a in vectors for b in vectors
    )


def check_spans_on_quadric(m):
    b = invariant_basis(m)
    inside = [_totally_singular(s.vectors()) for s in (b.span_even, b.span_odd)]
    expected = m % 2 == 1
    return all(x == expected for x in inside), f"spans inside Q(4): {inside} (expected {expected})"


# -- group --------------------------------------------------------------------

def check_generator_invariance(m):
    rng = random.Random(SEED)
    xs = _tensors(m, 500, rng)
    gens = stabiliser_generators(m)
    bad_q = sum(quadratic_form(g(x)) != quadratic_form(x) for g in gens for x in xs)
    units = [Tensor.unit(m, i) for i in range(1 << m)]
    bad_s = sum(
        symplectic_form(g(x), g(y)) != symplectic_form(x, y) for g in gens for x in units for y in units
    )
    return bad_q == bad_s == 0, f"{len(gens)} generators: Q failures {bad_q}, [,] failures {bad_s}"


def check_set_invariance(m):
    gens = stabiliser_generators(m)
    segre = set(segre_points(m, 2))
    ok = all({g(p).normalized() for p in segre} == segre for g in gens)
    basis = set(invariant_basis(m).points)
    ok &= all({g(p).normalized() for p in basis} == basis for g in gens)
    lines = set(base_lines(m))
    ok &= all({g.apply_line(ln) for ln in lines} == lines for g in gens)
    detail = "Segre, B_m and base lines preserved"
    if m <= 3:
        quad = set(quadric_points(m, 2))
        ok &= all({g(p).normalized() for p in quad} == quad for g in gens)
        detail += ", Q(2) preserved"
    if m == 3:
        spread = {s.line for s in line_spread(3)}
        ok &= all({g.apply_line(ln) for ln in spread} == spread for g in gens)
        detail += ", spread preserved"
    return ok, detail


def check_index_action(m):
    """Induced action on B_m equals i -> sigma(i) + s (whole group at m <= 3)."""
    perms = list(itertools.permutations(range(m)))
    if m <= 3:
        elements = [(maps, p) for maps in itertools.product(GL22, repeat=m) for p in perms]
    else:
        rng = random.Random(SEED)
        elements = [([rng.choice(GL22) for _ in range(m)], rng.choice(perms)) for _ in range(200)]
    for maps, perm in elements:
        induced_index_action(maps, perm, m)  # raises on mismatch
    return True, f"{len(elements)} group elements checked"


def check_index_transitivity(m):
    found = True
    for k in range(m):
        maps = [IDENTITY] * m
        maps[k] = SWAP
        act = induced_index_action(maps, None, m)
        found &= act == IndexAction(tuple(range(m)), 1 << (m - 1 - k))
    for k in range(m - 1):
        perm = list(range(m))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        act = induced_index_action(None, perm, m)
        found &= act == IndexAction(tuple(perm), 0)
    return found, "witnesses for every unit translation and adjacent transposition"


# -- basis and parity spans --------------------------------------------------------

def check_spans_skew(m):
    b = invariant_basis(m)
    joined = b.span_even.join(b.span_odd)
    ok = joined.dim == (1 << m) - 1 and b.span_even.dim == b.span_odd.dim == (1 << (m - 1)) - 1
    return ok, f"dim span+ = {b.span_even.dim}, dim span- = {b.span_odd.dim}, dim join = {joined.dim}"


def check_spans_reality(m):
    b = invariant_basis(m)
    lines = base_lines(m)
    if m % 2 == 0:
        ok = b.span_even.is_real() and b.span_odd.is_real()
        ok &= all(
            [b.span_even.contains(l.first) and b.span_even.contains(l.second),
             b.span_odd.contains(l.first) and b.span_odd.contains(l.second)].count(True) == 1
            for l in lines
        )
        return ok, "spans real, each base line inside exactly one span"
    ok = b.span_even.conjugate() == b.span_odd
    ok &= all(len(meet_points(l, b.span_even)) == len(meet_points(l, b.span_odd)) == 1 for l in lines)
    return ok, "spans conjugate, each base line meets each span once"


def base_line_real_points(m: int) -> set[Tensor]:
    return {p for ln in base_lines(m) for p in real_points_of_line(ln)}


def check_base_line_orbit(m):
    pts = base_line_real_points(m)
    gens = stabiliser_generators(m)
    start = min(pts, key=lambda t: t.key)
    orb = orbit(start, [lambda x, g=g: g(x).normalized() for g in gens])
    ok = orb == pts and len(pts) == 3 * (1 << (m - 1))
    return ok, f"{len(pts)} real points on base lines, orbit size {len(orb)}"


# -- tangents and spread ---------------------------------------------------------

def check_tangent_spans(m):
    b = invariant_basis(m)
    counts = [
        (len(meet_points(t, b.span_even)), len(meet_points(t, b.span_odd)))
        for t in (distinguished_tangent(p) for p in segre_points(m, 2))
    ]
    ok = all(c == (1, 1) for c in counts)
    return ok, f"{len(counts)} distinguished tangents, each meeting both spans once: {ok}"


def check_tangent_modes(m):
    pts = segre_points(m, 2)
    bad = sum(distinguished_tangent(p, "closed") != distinguished_tangent(p, "oracle") for p in pts)
    return bad == 0, f"{len(pts)} Segre points, {bad} disagreements"


def check_tangent_contact(m):
    """Contact points of the tangent at E_1..1 with the parity spans."""
    n = 1 << m
    t = distinguished_tangent(Tensor.unit(m, n - 1)).over(4)
    b = invariant_basis(m)
    (even,), (odd,) = meet_points(t, b.span_even), meet_points(t, b.span_odd)
    if m % 2:
        want_even = sum((Tensor.unit(m, i, U) for i in b.even), Tensor(m, basis=U))
        want_odd = sum((Tensor.unit(m, i, U) for i in b.odd), Tensor(m, basis=U))
    else:
        want_odd = sum((Tensor.unit(m, (n - 1) ^ (1 << k)) for k in range(m)), Tensor(m))
        want_even = want_odd + Tensor.unit(m, n - 1)
    ok = even == want_even.to(E).normalized() and odd == want_odd.to(E).normalized()
    return ok, f"contacts {even} / {odd}"


def check_tangent_congruence(m):
    b = invariant_basis(2)
    tangents = {distinguished_tangent(p) for p in segre_points(2, 2)}
    ok = len(tangents) == 9
    for t in tangents:
        meets = meet_points(t, b.span_even) + meet_points(t, b.span_odd)
        ok &= len(meets) == 2 and all(p.is_real() for p in meets)
    joins = {line(a, c, 2) for a in b.span_even.points(2) for c in b.span_odd.points(2)}
    ok &= joins == tangents
    return ok, f"{len(tangents)} distinguished tangents = joins of the real points of the span lines"


def check_spread_tangents(m):
    top = 1 << (m - 1)
    bad = 0
    tangents = [distinguished_tangent(p) for p in segre_points(m, 2)]
    for t in tangents:
        sl = spread_line_through(t.first)
        bad += sl.line != t.over(4) or sl.class_r != top
    return bad == 0, f"{len(tangents)} tangents are spread lines of class {top}: {bad} failures"


def check_spread_partition(m):
    spread = line_spread(m)
    pts = [p for s in spread for p in s.real_points()]
    total = (1 << (1 << m)) - 1
    ok = len(pts) == len(set(pts)) == total and len(spread) == total // 3
    return ok, f"{len(spread)} lines, {len(pts)} real points ({len(set(pts))} distinct) of {total}"


def check_spread_dichotomy(m):
    bad = 0
    spread = line_spread(m)
    for s in spread:
        on_q4 = sum(quadratic_form(p) == ZERO for p in s.line.points())
        real_on_q2 = sum(quadratic_form(p) == ZERO for p in s.real_points())
        kind = spread_line_vs_quadric(s)
        if kind == "generator":
            bad += on_q4 != 5 or s.class_r % 2
        else:
            bad += on_q4 != 2 or real_on_q2 != 0 or s.class_r % 2 == 0
    return bad == 0, f"{len(spread)} spread lines, {bad} failures"


def check_spread_orbits(m):
    part = spread_line_orbits(m)
    coincide = all(
        len({s.class_r for s in part.members(i)}) == 1 for i in range(len(part))
    ) and len({part.representatives[i].class_r for i in range(len(part))}) == len(part)
    ok = sorted(part.orbit_sizes) == [4, 18, 27, 36] and coincide
    return ok, f"orbit sizes {part.orbit_sizes}, classes coincide: {coincide}"


def check_point_orbits(m):
    part = point_orbits(m)
    total = (1 << (1 << m)) - 1
    segre = set(segre_points(m, 2))
    ok = sum(part.orbit_sizes) == total and segre in [set(b) for b in part.blocks()]
    if m == 2:
        ok &= sorted(part.orbit_sizes) == [6, 9]
    if m == 3:
        ok &= sorted(part.orbit_sizes) == [12, 27, 54, 54, 108]
        names = {}
        for p, lab in zip(part.objects, part.labels):
            names.setdefault(lab, set()).add(classify_point(p))
        ok &= all(len(v) == 1 for v in names.values()) and len({v.pop() for v in names.values()}) == 5
        quad = {p for p in part.objects if classify_point(p) in ("O2", "O4", "O5")}
        ok &= quad == set(quadric_points(3, 2))
    return ok, f"{len(part)} orbits, sizes {sorted(part.orbit_sizes)}"


def check_hermitian_substructure(m):
    h = hermitian_substructure(3)
    per_line = [0] * len(h.lines)
    per_point = [0] * len(h.points)
    for i, j in h.incidences:
        per_point[i] += 1
        per_line[j] += 1
    m2m4 = all(class_r(p) in (2, 4) for p in h.points)
    ok = (len(h.points), len(h.lines), len(h.incidences)) == (45, 27, 135)
    ok &= set(per_line) == {5} and set(per_point) == {3} and m2m4
    return ok, f"{len(h.points)} points, {len(h.lines)} lines, {len(h.incidences)} flags"


def check_segre_is_quadric(m):
    ok = segre_points(2, 2) == quadric_points(2, 2)
    return ok, "S_(2)(2) = Q(2)"


def check_hamming_paths(m):
    """Hamming distance on B_m = line distance in the collinearity graph of S_(m)(4)."""
    pts = segre_points(m, 4)
    on = set(pts)
    adj = {p: [] for p in pts}
    for a, c in itertools.combinations(pts, 2):
        if all(x in on for x in line(a, c, 4).points()):
            adj[a].append(c)
            adj[c].append(a)
    b = invariant_basis(m)
    bad = 0
    for i in range(1 << m):
        dist = {b.points[i]: 0}
        todo = deque([b.points[i]])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    todo.append(y)
        bad += any(dist[b.points[j]] != bin(i ^ j).count("1") for j in range(1 << m))
    return bad == 0, f"{1 << m} basis points, {bad} mismatches"


# name -> (function, supported m)
CHECKS: dict[str, tuple[Callable, tuple[int, ...]]] = {
    "polarization": (check_polarization, (2, 3, 4)),
    "quadric-decomposables": (check_quadric_decomposables, (2, 3, 4)),
    "quadric-count": (check_quadric_count, (2, 3, 4)),
    "witt-index": (check_witt_index, (2, 3, 4)),
    "hermitian-self-polarity": (check_hermitian_self_polarity, (1, 2, 3, 4, 5)),
    "polarity": (check_polarity, (2, 3, 4)),
    "spans-on-quadric": (check_spans_on_quadric, (2, 3, 4)),
    "generator-invariance": (check_generator_invariance, (2, 3, 4)),
    "set-invariance": (check_set_invariance, (2, 3, 4)),
    "index-action": (check_index_action, (1, 2, 3, 4)),
    "index-transitivity": (check_index_transitivity, (1, 2, 3, 4)),
    "spans-skew": (check_spans_skew, (1, 2, 3, 4)),
    "spans-reality": (check_spans_reality, (2, 3, 4)),
    "base-line-orbit": (check_base_line_orbit, (2, 3, 4)),
    "tangent-spans": (check_tangent_spans, (2, 3, 4, 5)),
    "tangent-modes": (check_tangent_modes, (2, 3, 4)),
    "tangent-contact": (check_tangent_contact, (2, 3, 4, 5)),
    "tangent-congruence": (check_tangent_congruence, (2,)),
    "spread-tangents": (check_spread_tangents, (3, 5)),
    "spread-partition": (check_spread_partition, (3,)),
    "spread-dichotomy": (check_spread_dichotomy, (3,)),
    "spread-orbits": (check_spread_orbits, (3,)),
    "point-orbits": (check_point_orbits, (2, 3, 4)),
    "hermitian-substructure": (check_hermitian_substructure, (3,)),
    "segre-is-quadric": (check_segre_is_quadric, (2,)),
    "hamming-paths": (check_hamming_paths, (3,)),
}

NEEDS_Q = {
    "polarization", "quadric-decomposables", "quadric-count", "witt-index", "polarity",
    "spans-on-quadric", "generator-invariance", "set-invariance", "spread-dichotomy",
}


class CheckError(ValueError):
    """Unknown check or unsupported m."""


def checks_for(m: int) -> list[str]:
    if m == 1:
        raise CheckError("the invariant quadratic form Q is undefined for m=1 (needs m >= 2)")
    names = [name for name, (_, ms) in CHECKS.items() if m in ms]
    if not names:
        raise CheckError(f"no checks support m={m} (full checks m <= 4, spot checks m = 5)")
    return names


def run_checks(m: int, names: list[str] | None = None) -> VerificationReport:
    if names is None:
        names = checks_for(m)
    report = VerificationReport(m)
    for name in names:
        if name not in CHECKS:
            raise CheckError(f"unknown check {name!r}; known: {', '.join(CHECKS)}")
        fn, ms = CHECKS[name]
        if m not in ms:
            if m == 1 and name in NEEDS_Q:
                raise CheckError("the invariant quadratic form Q is undefined for m=1 (needs m >= 2)")
            raise CheckError(f"check {name!r} supports m in {ms}, got m={m}")
        ok, detail = fn(m)
        report.checks.append((name, bool(ok), detail))
    return report
