"""The stabiliser group G_(m)(2) and its orbits.

The group is never materialised: orbits are computed by breadth-first closure
of an object set under the 3m - 1 generators (two GL(2,2) generators per
factor plus the adjacent factor transpositions).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .space import (
    E,
    IDENTITY,
    Line,
    Matrix,
    SizeLimitError,
    Tensor,
    U,
    apply_factor_map,
    check_enum_limit,
    det,
    kronecker_apply,
    line,
    permute_factors,
    permute_index,
    projective_points,
    swap_adjacent,
)
from .varieties import SpreadLine, invariant_basis, line_spread, on_segre, spread_line_through

SWAP: Matrix = ((0, 1), (1, 0))
SHEAR: Matrix = ((1, 1), (0, 1))  # e0 -> e0, e1 -> e0 + e1

GL22: tuple[Matrix, ...] = tuple(
    ((a, b), (c, d))
    for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1)
    if (a * d + b * c) % 2
)


@dataclass(frozen=True)
class Generator:
    """A factor map (``kind="map"``) or an adjacent factor swap (``kind="swap"``).

    For a swap, ``factor`` is k and the transposition exchanges factors k and
    k+1 (0-based).
    """

    kind: str
    factor: int
    matrix: Matrix = IDENTITY

    def __call__(self, x: Tensor) -> Tensor:
        if self.kind == "map":
            return apply_factor_map(self.factor, self.matrix, x)
        return swap_adjacent(self.factor, x)

    def apply_line(self, ln: Line) -> Line:
        return line(self(ln.first), self(ln.second), ln.q)

    def __str__(self) -> str:
        if self.kind == "map":
            return f"f{self.factor + 1}={self.matrix}"
        return f"swap({self.factor + 1},{self.factor + 2})"


def stabiliser_generators(m: int) -> list[Generator]:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    gens = []
    for k in range(m):
        gens.append(Generator("map", k, SWAP))
        gens.append(Generator("map", k, SHEAR))
    gens += [Generator("swap", k) for k in range(m - 1)]
    return gens


def _gf2_apply(mat: Matrix, v: tuple[int, int]) -> tuple[int, int]:
    (a, b), (c, d) = mat
    return ((a * v[0] + b * v[1]) % 2, (c * v[0] + d * v[1]) % 2)


def sgn2(mat: Matrix) -> int:
    """0 if ``mat`` permutes the nonzero vectors of GF(2)^2 evenly, else 1."""
    if any(x not in (0, 1) for row in mat for x in row):
        raise ValueError(f"{mat} is not a GF(2) matrix")
    if det(mat) == 0:
        raise ValueError(f"singular matrix {mat}")
    vecs = [(1, 0), (0, 1), (1, 1)]
    perm = [vecs.index(_gf2_apply(mat, v)) for v in vecs]
    inversions = sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3))
    return inversions % 2


@dataclass(frozen=True)
class IndexAction:
    """The affine map i -> sigma(i) + shift on multi-indices."""

    perm: tuple[int, ...]
    shift: int

    def __call__(self, i: int) -> int:
        return permute_index(self.perm, i) ^ self.shift


def induced_index_action(
    maps: Sequence[Matrix] | None = None,
    perm: Sequence[int] | None = None,
    m: int | None = None,
) -> IndexAction:
    """Action on B_m of g = (f_1 x ... x f_m) o f_sigma, checked point by point."""
    if m is None:
        m = len(maps) if maps is not None else len(perm)
    maps = tuple(maps) if maps is not None else (IDENTITY,) * m
    perm = tuple(perm) if perm is not None else tuple(range(m))
    shift = 0
    for k, mat in enumerate(maps):
        shift |= sgn2(mat) << (m - 1 - k)
    predicted = IndexAction(perm, shift)

    basis = invariant_basis(m)
    for i in range(1 << m):
        image = kronecker_apply(maps, permute_factors(perm, Tensor.unit(m, i, U)))
        j = basis.index_of(image)
        if j is None:
            raise RuntimeError(f"image of U_{i:0{m}b} is not a point of B_{m}")
        if j != predicted(i):
            raise RuntimeError(f"U_{i:0{m}b} maps to U_{j:0{m}b}, expected U_{predicted(i):0{m}b}")
    return predicted


# -- orbits -------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitPartition:
    objects: tuple
    labels: tuple[int, ...]
    representatives: tuple
    orbit_sizes: tuple[int, ...]  # indexed by orbit id

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(self.orbit_sizes, reverse=True))

    def __len__(self) -> int:
        return len(self.orbit_sizes)

    def members(self, orbit_id: int) -> list:
        return [o for o, lab in zip(self.objects, self.labels) if lab == orbit_id]

    def label_of(self, obj) -> int:
        return self.labels[self.objects.index(obj)]

    def blocks(self) -> list[frozenset]:
        return [frozenset(self.members(i)) for i in range(len(self))]


def orbit(start: Hashable, actions: Iterable[Callable]) -> set:
    actions = list(actions)
    seen = {start}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for act in actions:
            y = act(x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def orbit_partition(objects: Iterable, actions: Iterable[Callable], key: Callable) -> OrbitPartition:
    """Partition a finite set closed under ``actions``; ids follow ``key`` order."""
    objects = sorted(objects, key=key)
    actions = list(actions)
    index = {o: n for n, o in enumerate(objects)}
    labels = [-1] * len(objects)
    reps, sizes = [], []
    for n, obj in enumerate(objects):
        if labels[n] >= 0:
            continue
        oid = len(reps)
        reps.append(obj)
        labels[n] = oid
        size = 1
        todo = deque([obj])
        while todo:
            x = todo.popleft()
            for act in actions:
                y = act(x)
                j = index.get(y)
                if j is None:
                    raise RuntimeError(f"action maps {x} outside the object set")
                if labels[j] < 0:
                    labels[j] = oid
                    size += 1
                    todo.append(y)
        sizes.append(size)
    return OrbitPartition(tuple(objects), tuple(labels), tuple(reps), tuple(sizes))


def point_orbits(m: int, q: int = 2) -> OrbitPartition:
    if q != 2:
        raise ValueError("point orbits are computed over GF(2) only")
    check_enum_limit(m, 2)
    gens = stabiliser_generators(m)
    return orbit_partition(projective_points(m, 2), gens, key=lambda t: t.key)


def _line_key(ln: Line):
    return (ln.first.key, ln.second.key)


def spread_line_orbits(m: int = 3) -> OrbitPartition:
    if m != 3:
        raise SizeLimitError("spread line orbits are computed for m = 3 only")
    spread = line_spread(m)
    by_line = {s.line: s for s in spread}

    def act(g):
        return lambda s: by_line.get(g.apply_line(s.line))

    return orbit_partition(
        spread, [act(g) for g in stabiliser_generators(m)], key=lambda s: _line_key(s.line)
    )


def classify_point(p: Tensor) -> str:
    """Orbit name O1..O5 of a point of PG(7, 2)."""
    if p.m != 3:
        raise ValueError("point classification is defined for m = 3")
    p = p.to(E).normalized()
    if on_segre(p, 2):
        return "O5"
    return f"O{spread_line_through(p).class_r}"
