"""The Segre variety S_(m)(q) and the objects attached to it.

Covers the invariant quadric, the Hermitian variety, the invariant basis with
its parity split, base lines, distinguished tangents and (odd m) the line
spread with its classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .field import ONE, W, ZERO
from .forms import hermitian_form, quadratic_form
from .space import (
    E,
    U,
    Line,
    SizeLimitError,
    Subspace,
    Tensor,
    check_enum_limit,
    conjugate,
    decomposable,
    line,
    opposite,
    parity,
    projective_points,
    span_subspace,
)

# (q+1)^m Segre points are cheap well beyond the full-space limits.
SEGRE_LIMITS = {2: 8, 4: 5}
OBJECT_LIMIT = 8
SPREAD_LIMIT = 3


def _factor_points(q: int) -> list[tuple[int, int]]:
    if q == 2:
        return [(0, 1), (1, 0), (1, 1)]
    return [(0, 1)] + [(1, c) for c in (ZERO, ONE, W, W + 1)]


@lru_cache(maxsize=None)
def _segre_table(m: int, q: int) -> dict[Tensor, tuple[tuple[int, int], ...]]:
    if q not in SEGRE_LIMITS:
        raise ValueError(f"field must be 2 or 4, got {q}")
    if not 1 <= m <= SEGRE_LIMITS[q]:
        raise SizeLimitError(f"Segre enumeration over GF({q}) is limited to m <= {SEGRE_LIMITS[q]}")
    table = {}
    for factors in itertools.product(_factor_points(q), repeat=m):
        table[decomposable(factors).normalized()] = factors
    return table


def segre_points(m: int, q: int) -> list[Tensor]:
    """Points F a_1 x ... x a_m, in canonical order."""
    return sorted(_segre_table(m, q), key=lambda t: t.key)


def on_segre(p: Tensor, q: int = 2) -> bool:
    return p.to(E).normalized() in _segre_table(p.m, q)


def segre_factors(p: Tensor, q: int = 2) -> tuple[tuple[int, int], ...]:
    try:
        return _segre_table(p.m, q)[p.to(E).normalized()]
    except KeyError:
        raise ValueError(f"{p} is not on the Segre variety over GF({q})") from None


def quadric_points(m: int, q: int) -> list[Tensor]:
    if m < 2:
        raise ValueError("the invariant quadric needs m >= 2")
    check_enum_limit(m, q)
    return sorted((p for p in projective_points(m, q) if quadratic_form(p) == ZERO), key=lambda t: t.key)


def on_hermitian(p: Tensor) -> bool:
    return hermitian_form(p, p) == ZERO


def hermitian_points(m: int) -> list[Tensor]:
    check_enum_limit(m, 4)
    return sorted((p for p in projective_points(m, 4) if on_hermitian(p)), key=lambda t: t.key)


# -- invariant basis ---------------------------------------------------------

@dataclass(frozen=True)
class InvariantBasis:
    m: int
    points: tuple[Tensor, ...]  # points[i] = F_4 U_i, E-coordinates
    even: tuple[int, ...]
    odd: tuple[int, ...]
    span_even: Subspace
    span_odd: Subspace

    def index_of(self, p: Tensor) -> int | None:
        """Multi-index of a basis point, or None if p is not in B_m."""
        return self._lookup().get(p.to(E).normalized())

    def _lookup(self) -> dict[Tensor, int]:
        return {pt: i for i, pt in enumerate(self.points)}


@lru_cache(maxsize=None)
def invariant_basis(m: int) -> InvariantBasis:
    if not 1 <= m <= OBJECT_LIMIT:
        raise SizeLimitError(f"object operations are limited to 1 <= m <= {OBJECT_LIMIT}")
    pts = tuple(Tensor.unit(m, i, U).to(E).normalized() for i in range(1 << m))
    even = tuple(i for i in range(1 << m) if parity(i) == 0)
    odd = tuple(i for i in range(1 << m) if parity(i) == 1)
    return InvariantBasis(
        m,
        pts,
        even,
        odd,
        span_subspace([Tensor.unit(m, i, U) for i in even], m),
        span_subspace([Tensor.unit(m, i, U) for i in odd], m),
    )


def base_lines(m: int) -> list[Line]:
    """The real lines U_i v U_i' for i with i_1 = 0."""
    half = 1 << (m - 1)
    return [line(Tensor.unit(m, i, U), Tensor.unit(m, opposite(i, m), U), 4) for i in range(half)]


def meet_points(ln: Line, s: Subspace) -> list[Tensor]:
    """Points of a line (over GF(4)) lying in a subspace."""
    return [p for p in ln.over(4).points() if s.contains(p)]


# -- distinguished tangents -----------------------------------------------------

def _complement(a: tuple[int, int]) -> tuple[int, int]:
    # smallest nonzero vector of GF(2)^2 other than a, in (x0, x1) order
    return (1, 0) if a == (0, 1) else (0, 1)


def _tangent_closed(p: Tensor) -> Line:
    factors = segre_factors(p, 2)
    second = Tensor(p.m)
    for k in range(p.m):
        fs = list(factors)
        fs[k] = _complement(fs[k])
        second = second + decomposable(fs)
    return line(p, second, 2)


def segre_lines_through(p: Tensor) -> list[Line]:
    """Lines of PG(2^m-1, 2) through p that lie entirely on the Segre."""
    found = {}
    for x in segre_points(p.m, 2):
        if x == p:
            continue
        ln = line(p, x, 2)
        if ln not in found and all(on_segre(y) for y in ln.points()):
            found[ln] = None
    return list(found)


def _tangent_oracle(p: Tensor) -> Line:
    gens = segre_lines_through(p)
    if len(gens) != p.m:
        raise RuntimeError(f"expected {p.m} generators through {p}, found {len(gens)}")

    def span_of(lines):
        return span_subspace([v for ln in lines for v in (ln.first, ln.second)], p.m)

    tangent_space = span_of(gens)
    tangents = {line(p, x, 2) for x in tangent_space.points(2) if x != p}
    if len(tangents) != (1 << p.m) - 1:
        raise RuntimeError(f"expected {(1 << p.m) - 1} tangents, found {len(tangents)}")
    hyper = [span_of(gens[:j] + gens[j + 1:]) for j in range(p.m)]
    free = [
        t for t in tangents
        if not any(s.contains(t.first) and s.contains(t.second) for s in hyper)
    ]
    if len(free) != 1:
        raise RuntimeError(f"expected one distinguished tangent at {p}, found {len(free)}")
    return free[0]


def distinguished_tangent(p: Tensor, mode: str = "closed") -> Line:
    """The distinguished tangent at a point of S_(m)(2), as a line over GF(2).

    ``mode="closed"`` uses the line through p and the sum of one extra point
    on each generator; ``mode="oracle"`` searches all tangents at p.
    """
    if p.m < 2:
        raise ValueError("distinguished tangents need m >= 2")
    p = p.to(E).normalized()
    if not on_segre(p, 2):
        raise ValueError(f"{p} is not a point of the Segre variety S_({p.m})(2)")
    if mode == "closed":
        return _tangent_closed(p)
    if mode == "oracle":
        return _tangent_oracle(p)
    raise ValueError(f"unknown mode {mode!r}")


def distinguished_tangents(m: int) -> list[Line]:
    return [distinguished_tangent(p) for p in segre_points(m, 2)]


# -- line spread (odd m) ------------------------------------------------------

@dataclass(frozen=True)
class SpreadLine:
    line: Line
    contact_even: Tensor
    class_r: int

    def real_points(self) -> list[Tensor]:
        return [p for p in self.line.points() if p.is_real()]


def class_r(x: Tensor) -> int:
    """Number of nonzero U-coordinates of a point of span<B_m^+>."""
    return x.to(U).support()


def spread_line_of(x: Tensor) -> SpreadLine:
    """The spread line X v conj(X) through a point X of span<B_m^+>."""
    if x.m % 2 == 0:
        raise ValueError("the invariant line spread exists only for odd m")
    y = x.to(U)
    if y.is_zero() or any(y[i] for i in range(y.n) if parity(i)):
        raise ValueError(f"{x} is not a point of span<B_m^+>")
    contact = y.to(E).normalized()
    return SpreadLine(line(contact, conjugate(contact), 4), contact, class_r(y))


def spread_line_through(p: Tensor) -> SpreadLine:
    """The spread line containing a real point p (odd m)."""
    if p.m % 2 == 0:
        raise ValueError("the invariant line spread exists only for odd m")
    if p.is_zero() or not p.is_real():
        raise ValueError(f"{p} is not a real point")
    y = p.to(U)
    even = sum((1 << i) for i in range(y.n) if parity(i) == 0)
    return spread_line_of(Tensor(p.m, y.lo & even, y.hi & even, U))


def _check_spread_m(m: int) -> None:
    if m % 2 == 0:
        raise ValueError(f"the invariant line spread exists only for odd m (got m={m})")
    if not 3 <= m <= SPREAD_LIMIT:
        raise SizeLimitError(f"full spread enumeration is limited to m = {SPREAD_LIMIT}")


def line_spread(m: int) -> list[SpreadLine]:
    _check_spread_m(m)
    basis = invariant_basis(m)
    out = [spread_line_of(x) for x in basis.span_even.points(4)]
    return sorted(out, key=lambda s: (s.line.first.key, s.line.second.key))


def spread_line_vs_quadric(sl: SpreadLine) -> str:
    """``"generator"`` if the line lies on Q(4), else ``"bisecant"``."""
    return "generator" if on_hermitian(sl.contact_even) else "bisecant"


# -- Hermitian substructure (m = 3) ---------------------------------------------

@dataclass(frozen=True)
class IncidenceStructure:
    points: tuple[Tensor, ...]
    lines: tuple[Line, ...]
    incidences: tuple[tuple[int, int], ...]  # (point index, line index)


def hermitian_substructure(m: int = 3) -> IncidenceStructure:
    """Points of H in span<B_3^+> and the lines of span<B_3^+> inside H."""
    if m != 3:
        raise ValueError("the Hermitian substructure is implemented for m = 3")
    pts = [x for x in invariant_basis(3).span_even.points(4) if on_hermitian(x)]
    pset = set(pts)
    lines = {}
    for a, b in itertools.combinations(pts, 2):
        ln = line(a, b, 4)
        if ln not in lines and all(x in pset for x in ln.points()):
            lines[ln] = None
    lns = sorted(lines, key=lambda l: (l.first.key, l.second.key))
    index = {p: i for i, p in enumerate(pts)}
    inc = sorted((index[x], j) for j, ln in enumerate(lns) for x in ln.points())
    return IncidenceStructure(tuple(pts), tuple(lns), tuple(inc))
