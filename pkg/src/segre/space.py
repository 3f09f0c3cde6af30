"""Tensors, points, lines and subspaces of PG(2^m - 1, q), q in {2, 4}.

A tensor of V_1 x ... x V_m (each V_k two-dimensional) has 2^m coordinates,
indexed by multi-indices i = (i_1, ..., i_m) encoded as integers with i_1 the
most significant bit.  Factor ``k`` (0-based) therefore sits at bit
``m - 1 - k`` of the index.

Coordinates live in GF(4) and are stored as two bitmasks: bit ``i`` of ``lo``
is the 1-component and bit ``i`` of ``hi`` the w-component of coordinate i.
Two bases are in use: the standard E-basis E_i = e_{i_1} x ... x e_{i_m} and
the invariant U-basis U_i = u_{i_1} x ... x u_{i_m} with u_0 = e_0 + w e_1,
u_1 = e_0 + w^2 e_1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .field import ELEMENTS, NONZERO, ONE, W, W2, ZERO, from_char, gf4_inv, gf4_mul, to_char

E, U = "E", "U"

# Full point enumeration limits, keyed by field order.
ENUM_LIMITS = {2: 4, 4: 3}

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
# coordinates in the target basis = matrix @ coordinates in the source basis
E_TO_U: Matrix = ((W2, 1), (W, 1))
U_TO_E: Matrix = ((1, 1), (W, W2))


class SizeLimitError(ValueError):
    """Raised when an enumeration would exceed the supported sizes."""


def check_enum_limit(m: int, q: int) -> None:
    if q not in ENUM_LIMITS:
        raise ValueError(f"field must be 2 or 4, got {q}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if m > ENUM_LIMITS[q]:
        raise SizeLimitError(
            f"enumerating PG({2 ** m - 1},{q}) is limited to m <= {ENUM_LIMITS[q]} (got m={m})"
        )


# -- multi-indices ----------------------------------------------------------

def opposite(i: int, m: int) -> int:
    if not 0 <= i < 1 << m:
        raise ValueError(f"multi-index {i} out of range for m={m}")
    return i ^ ((1 << m) - 1)


def hamming(i: int, j: int) -> int:
    return (i ^ j).bit_count()


def parity(i: int) -> int:
    return hamming(i, 0) & 1


def index_str(i: int, m: int) -> str:
    return format(i, f"0{m}b")


# -- bitmask helpers --------------------------------------------------------

@lru_cache(maxsize=None)
def _low_mask(m: int, b: int) -> int:
    """Bits at the indices whose bit ``b`` is 0."""
    return sum(1 << i for i in range(1 << m) if not (i >> b) & 1)


def _reverse(x: int, n: int) -> int:
    """Move bit i to bit n-1-i, i.e. coordinate i to the opposite index."""
    return int(format(x, f"0{n}b")[::-1], 2)


def _scale(lo: int, hi: int, c: int) -> tuple[int, int]:
    if c == ZERO:
        return 0, 0
    if c == ONE:
        return lo, hi
    if c == W:
        # (a + b w) w = b + (a + b) w
        return hi, lo ^ hi
    return lo ^ hi, lo


def _coord(lo: int, hi: int, i: int) -> int:
    return ((lo >> i) & 1) | (((hi >> i) & 1) << 1)


def _apply_factor(lo: int, hi: int, m: int, k: int, mat: Matrix) -> tuple[int, int]:
    """Apply ``mat`` to factor ``k`` of a coordinate vector."""
    s = 1 << (m - 1 - k)
    p0 = _low_mask(m, m - 1 - k)
    a = (lo & p0, hi & p0)
    b = ((lo >> s) & p0, (hi >> s) & p0)
    (m00, m01), (m10, m11) = mat
    y0 = _add(_scale(*a, m00), _scale(*b, m01))
    y1 = _add(_scale(*a, m10), _scale(*b, m11))
    return y0[0] | (y1[0] << s), y0[1] | (y1[1] << s)


def _add(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return x[0] ^ y[0], x[1] ^ y[1]


def det(mat: Matrix) -> int:
    (a, b), (c, d) = mat
    return gf4_mul(a, d) ^ gf4_mul(b, c)


# -- tensors ----------------------------------------------------------------

@dataclass(frozen=True)
class Tensor:
    """A coordinate vector of length 2^m over GF(4) in the E- or U-basis."""

    m: int
    lo: int = 0
    hi: int = 0
    basis: str = E

    @property
    def n(self) -> int:
        return 1 << self.m

    @classmethod
    def from_coords(cls, coords: Sequence[int], basis: str = E) -> Tensor:
        n = len(coords)
        m = n.bit_length() - 1
        if n < 2 or 1 << m != n:
            raise ValueError(f"coordinate count must be a power of two >= 2, got {n}")
        lo = hi = 0
        for i, c in enumerate(coords):
            if c not in ELEMENTS:
                raise ValueError(f"not a GF(4) code: {c!r}")
            lo |= (c & 1) << i
            hi |= (c >> 1) << i
        return cls(m, lo, hi, basis)

    @classmethod
    def unit(cls, m: int, i: int, basis: str = E) -> Tensor:
        if not 0 <= i < 1 << m:
            raise ValueError(f"multi-index {i} out of range for m={m}")
        return cls(m, 1 << i, 0, basis)

    @classmethod
    def parse(cls, text: str) -> Tensor:
        tag, sep, body = text.partition(":")
        if not sep or tag not in (E, U):
            raise ValueError(f"expected 'E:' or 'U:' prefix in {text!r}")
        return cls.from_coords([from_char(c) for c in body], tag)

    def coords(self) -> list[int]:
        return [_coord(self.lo, self.hi, i) for i in range(self.n)]

    def __getitem__(self, i: int) -> int:
        return _coord(self.lo, self.hi, i)

    def __str__(self) -> str:
        return f"{self.basis}:" + "".join(to_char(c) for c in self.coords())

    @cached_property
    def key(self) -> tuple[int, ...]:
        """Canonical sort key: lexicographic order of the coordinate codes."""
        return tuple(self.coords())

    def _check(self, other: Tensor) -> None:
        if self.m != other.m or self.basis != other.basis:
            raise ValueError(
                f"incompatible tensors: m={self.m}/{other.m}, basis={self.basis}/{other.basis}"
            )

    def __add__(self, other: Tensor) -> Tensor:
        self._check(other)
        return Tensor(self.m, self.lo ^ other.lo, self.hi ^ other.hi, self.basis)

    __sub__ = __add__

    def scale(self, c: int) -> Tensor:
        lo, hi = _scale(self.lo, self.hi, c)
        return Tensor(self.m, lo, hi, self.basis)

    def __rmul__(self, c: int) -> Tensor:
        return self.scale(c)

    def is_zero(self) -> bool:
        return not (self.lo | self.hi)

    def support(self) -> int:
        """Number of nonzero coordinates."""
        return hamming(self.lo | self.hi, 0)

    def leading_index(self) -> int:
        nz = self.lo | self.hi
        if not nz:
            raise ValueError("zero tensor has no leading index")
        return (nz & -nz).bit_length() - 1

    def normalized(self) -> Tensor:
        """Projective representative: first nonzero coordinate equals 1."""
        c = self[self.leading_index()]
        return self if c == ONE else self.scale(gf4_inv(c))

    def to(self, basis: str) -> Tensor:
        return change_basis(self, basis)

    def is_real(self) -> bool:
        return self.to(E).hi == 0


def normalize(x: Tensor) -> Tensor:
    return x.normalized()


def decomposable(factors: Sequence[Sequence[int]]) -> Tensor:
    """Outer product a_1 x ... x a_m of nonzero factor vectors (E-basis)."""
    coords = [ONE]
    for a in factors:
        if len(a) != 2 or a[0] == ZERO and a[1] == ZERO:
            raise ValueError("decomposable tensors need nonzero factor pairs")
        # the newest factor becomes the least significant index bit
        coords = [gf4_mul(c, a[b]) for c in coords for b in (0, 1)]
    if len(coords) < 2:
        raise ValueError("need at least one factor")
    return Tensor.from_coords(coords, E)


def change_basis(x: Tensor, target: str) -> Tensor:
    if target not in (E, U):
        raise ValueError(f"unknown basis {target!r}")
    if x.basis == target:
        return x
    mat = E_TO_U if target == U else U_TO_E
    lo, hi = x.lo, x.hi
    for k in range(x.m):
        lo, hi = _apply_factor(lo, hi, x.m, k, mat)
    return Tensor(x.m, lo, hi, target)


def kronecker_apply(maps: Sequence[Matrix], x: Tensor) -> Tensor:
    """Apply f_1 x ... x f_m; ``maps[k]`` acts on factor k (0-based)."""
    if len(maps) != x.m:
        raise ValueError(f"need {x.m} factor maps, got {len(maps)}")
    for mat in maps:
        if det(mat) == ZERO:
            raise ValueError(f"singular factor map {mat}")
    basis = x.basis
    y = x.to(E)
    lo, hi = y.lo, y.hi
    for k, mat in enumerate(maps):
        if mat != IDENTITY:
            lo, hi = _apply_factor(lo, hi, x.m, k, mat)
    return Tensor(x.m, lo, hi, E).to(basis)


def apply_factor_map(k: int, mat: Matrix, x: Tensor) -> Tensor:
    """Apply ``mat`` on factor k only (E-basis computation)."""
    maps = [IDENTITY] * x.m
    maps[k] = mat
    return kronecker_apply(maps, x)


@lru_cache(maxsize=None)
def _index_permutation(perm: tuple[int, ...]) -> tuple[int, ...]:
    m = len(perm)
    table = []
    for i in range(1 << m):
        j = 0
        for k in range(m):
            if (i >> (m - 1 - k)) & 1:
                j |= 1 << (m - 1 - perm[k])
        table.append(j)
    return tuple(table)


def permute_index(perm: Sequence[int], i: int) -> int:
    """sigma(i): the entry of factor k moves to factor perm[k] (0-based)."""
    return _index_permutation(tuple(perm))[i]


def _check_perm(perm: Sequence[int], m: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(m)):
        raise ValueError(f"{perm} is not a permutation of 0..{m - 1}")
    return perm


@lru_cache(maxsize=None)
def _adjacent_masks(m: int, k: int) -> tuple[int, int, int]:
    hi_bit, lo_bit = m - 1 - k, m - 2 - k
    up = down = 0
    for i in range(1 << m):
        a, b = (i >> hi_bit) & 1, (i >> lo_bit) & 1
        if a and not b:
            down |= 1 << i
        elif b and not a:
            up |= 1 << i
    return down, up, 1 << lo_bit


def swap_adjacent(k: int, x: Tensor) -> Tensor:
    """f_sigma for the transposition of factors k and k+1 (0-based)."""
    if not 0 <= k < x.m - 1:
        raise ValueError(f"no adjacent factor pair ({k}, {k + 1}) for m={x.m}")
    down, up, s = _adjacent_masks(x.m, k)
    keep = ~(down | up)

    def move(v: int) -> int:
        return (v & keep) | ((v & down) >> s) | ((v & up) << s)

    return Tensor(x.m, move(x.lo), move(x.hi), x.basis)


def permute_factors(perm: Sequence[int], x: Tensor) -> Tensor:
    """f_sigma: sends E_i to E_sigma(i) (and U_i to U_sigma(i))."""
    table = _index_permutation(_check_perm(perm, x.m))
    lo = hi = 0
    for i, j in enumerate(table):
        lo |= ((x.lo >> i) & 1) << j
        hi |= ((x.hi >> i) & 1) << j
    return Tensor(x.m, lo, hi, x.basis)


def conjugate(x: Tensor) -> Tensor:
    """Complex conjugation with respect to the real subspace PG(2^m-1, 2)."""
    lo, hi = x.lo ^ x.hi, x.hi
    if x.basis == U:
        # conj(U_i) = U_i'
        lo, hi = _reverse(lo, x.n), _reverse(hi, x.n)
    return Tensor(x.m, lo, hi, x.basis)


def reverse_indices(x: Tensor) -> Tensor:
    """Coordinate i moves to the opposite index i'."""
    return Tensor(x.m, _reverse(x.lo, x.n), _reverse(x.hi, x.n), x.basis)


# -- enumeration of points --------------------------------------------------

def projective_points(m: int, q: int) -> Iterator[Tensor]:
    """All points of PG(2^m - 1, q) as normalized E-basis tensors."""
    check_enum_limit(m, q)
    n = 1 << m
    if q == 2:
        for lo in range(1, 1 << n):
            yield Tensor(m, lo, 0, E)
        return
    for lead in range(n):
        for tail in itertools.product(ELEMENTS, repeat=n - 1 - lead):
            lo, hi = 1 << lead, 0
            for off, c in enumerate(tail, lead + 1):
                lo |= (c & 1) << off
                hi |= (c >> 1) << off
            yield Tensor(m, lo, hi, E)


def point_count(m: int, q: int) -> int:
    return (q ** (1 << m) - 1) // (q - 1)


# -- lines ------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """A projective line over GF(q), stored as its two smallest points."""

    first: Tensor
    second: Tensor
    q: int = 4

    def points(self) -> list[Tensor]:
        scalars = NONZERO if self.q == 4 else (ONE,)
        pts = [self.first, self.second]
        pts += [(self.second + self.first.scale(c)).normalized() for c in scalars]
        return sorted(pts, key=lambda t: t.key)

    def over(self, q: int) -> Line:
        return line(self.first, self.second, q)

    def contains(self, p: Tensor) -> bool:
        return p.to(E).normalized() in set(self.points())

    def __str__(self) -> str:
        return f"{self.first} {self.second}"


def line(a: Tensor, b: Tensor, q: int = 4) -> Line:
    """The line a v b over GF(q)."""
    if q not in (2, 4):
        raise ValueError(f"field must be 2 or 4, got {q}")
    a, b = a.to(E), b.to(E)
    if a.is_zero() or b.is_zero() or a.normalized() == b.normalized():
        raise ValueError("a line needs two independent tensors")
    if q == 2 and not (a.is_real() and b.is_real()):
        raise ValueError("a line over GF(2) needs real tensors")
    a = a.normalized()
    scalars = NONZERO if q == 4 else (ONE,)
    pts = [a, b.normalized()] + [(b + a.scale(c)).normalized() for c in scalars]
    pts.sort(key=lambda t: t.key)
    return Line(pts[0], pts[1], q)


def real_points_of_line(ln: Line) -> list[Tensor]:
    """The three real points of a real line of PG(2^m - 1, 4)."""
    pts = [p for p in ln.over(4).points() if p.is_real()]
    if len(pts) != 3:
        raise ValueError(f"line {ln} is not real ({len(pts)} real points)")
    return pts


# -- subspaces --------------------------------------------------------------

def _reduce(rows: Sequence[tuple[int, int, int]], lo: int, hi: int) -> tuple[int, int]:
    for piv, rlo, rhi in rows:
        c = _coord(lo, hi, piv)
        if c:
            slo, shi = _scale(rlo, rhi, c)
            lo, hi = lo ^ slo, hi ^ shi
    return lo, hi


def _echelon(m: int, vectors: Iterable[tuple[int, int]]) -> tuple[tuple[int, int, int], ...]:
    rows: list[tuple[int, int, int]] = []
    for lo, hi in vectors:
        lo, hi = _reduce(rows, lo, hi)
        nz = lo | hi
        if not nz:
            continue
        piv = (nz & -nz).bit_length() - 1
        lo, hi = _scale(lo, hi, gf4_inv(_coord(lo, hi, piv)))
        new = []
        for p, rlo, rhi in rows:
            c = _coord(rlo, rhi, piv)
            if c:
                slo, shi = _scale(lo, hi, c)
                rlo, rhi = rlo ^ slo, rhi ^ shi
            new.append((p, rlo, rhi))
        rows = sorted(new + [(piv, lo, hi)])
    return tuple(rows)


@dataclass(frozen=True)
class Subspace:
    """A projective subspace held as a reduced echelon basis in E-coordinates.

    Rows are ``(pivot, lo, hi)``; equal subspaces have identical rows.
    """

    m: int
    rows: tuple[tuple[int, int, int], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    def vectors(self) -> list[Tensor]:
        return [Tensor(self.m, lo, hi, E) for _, lo, hi in self.rows]

    def contains(self, x: Tensor) -> bool:
        if x.m != self.m:
            raise ValueError(f"tensor has m={x.m}, subspace has m={self.m}")
        y = x.to(E)
        return _reduce(self.rows, y.lo, y.hi) == (0, 0)

    def __contains__(self, x: Tensor) -> bool:
        return self.contains(x)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.vectors())

    def join(self, other: Subspace) -> Subspace:
        return span_subspace(self.vectors() + other.vectors(), self.m)

    def meet_dim(self, other: Subspace) -> int:
        return self.dim + other.dim - self.join(other).dim

    def conjugate(self) -> Subspace:
        return span_subspace([conjugate(v) for v in self.vectors()], self.m)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def points(self, q: int = 4) -> list[Tensor]:
        """All points of the subspace over GF(q), normalized, canonical order."""
        if q == 2 and any(hi for _, _, hi in self.rows):
            raise ValueError("subspace has no real echelon basis; cannot list GF(2) points")
        scalars = ELEMENTS if q == 4 else (ZERO, ONE)
        out = []
        for j, (_, lo, hi) in enumerate(self.rows):
            for tail in itertools.product(scalars, repeat=len(self.rows) - 1 - j):
                vlo, vhi = lo, hi
                for c, (_, rlo, rhi) in zip(tail, self.rows[j + 1:]):
                    slo, shi = _scale(rlo, rhi, c)
                    vlo, vhi = vlo ^ slo, vhi ^ shi
                out.append(Tensor(self.m, vlo, vhi, E))
        return sorted(out, key=lambda t: t.key)


def span_subspace(tensors: Iterable[Tensor], m: int | None = None) -> Subspace:
    tensors = [t.to(E) for t in tensors]
    if not tensors:
        if m is None:
            raise ValueError("m is required for the empty subspace")
        return Subspace(m, ())
    ms = {t.m for t in tensors}
    if len(ms) != 1 or (m is not None and ms != {m}):
        raise ValueError("all tensors must share m")
    m = ms.pop()
    return Subspace(m, _echelon(m, ((t.lo, t.hi) for t in tensors)))


def contains(s: Subspace, x: Tensor) -> bool:
    return s.contains(x)


def nullspace(m: int, functionals: Iterable[tuple[int, int]]) -> list[Tensor]:
    """Basis of {y : sum_j c_j y_j = 0 for every functional c}."""
    rows = _echelon(m, functionals)
    pivots = {p for p, _, _ in rows}
    basis = []
    for f in range(1 << m):
        if f in pivots:
            continue
        lo, hi = 1 << f, 0
        for p, rlo, rhi in rows:
            c = _coord(rlo, rhi, f)
            # char 2: y_p = -c y_f = c y_f
            lo |= (c & 1) << p
            hi |= (c >> 1) << p
        basis.append(Tensor(m, lo, hi, E))
    return basis
