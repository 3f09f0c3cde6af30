"""Symplectic, quadratic and Hermitian forms on the tensor space.

Factor bases are symplectic ([e_0, e_1] = 1), so [E_i, E_i'] = 1 and all
form constants drop out.  Forms are evaluated on E-coordinates.
"""

from __future__ import annotations

from .space import E, Subspace, Tensor, _reverse, conjugate, nullspace, span_subspace


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _pair(xlo: int, xhi: int, ylo: int, yhi: int) -> int:
    """sum_i x_i y_i over GF(4) for bit-packed coordinates."""
    # (a0 + a1 w)(b0 + b1 w) = (a0 b0 + a1 b1) + (a0 b1 + a1 b0 + a1 b1) w
    one = _parity((xlo & ylo) ^ (xhi & yhi))
    w = _parity((xlo & yhi) ^ (xhi & ylo) ^ (xhi & yhi))
    return one | (w << 1)


def _as_e(x: Tensor, y: Tensor | None = None) -> tuple[Tensor, Tensor | None]:
    if y is not None and x.m != y.m:
        raise ValueError(f"mismatched factor counts m={x.m} and m={y.m}")
    return x.to(E), None if y is None else y.to(E)


def symplectic_form(x: Tensor, y: Tensor) -> int:
    """[X, Y] = sum_i x_i y_i'."""
    x, y = _as_e(x, y)
    n = x.n
    return _pair(x.lo, x.hi, _reverse(y.lo, n), _reverse(y.hi, n))


def quadratic_form(x: Tensor) -> int:
    """Q(X) = sum over i with i_1 = 0 of x_i x_i'."""
    if x.m < 2:
        raise ValueError("the invariant quadratic form needs m >= 2")
    x, _ = _as_e(x)
    n = x.n
    half = (1 << (n // 2)) - 1
    return _pair(x.lo & half, x.hi & half, _reverse(x.lo, n) & half, _reverse(x.hi, n) & half)


def hermitian_form(x: Tensor, y: Tensor) -> int:
    """[X, Y]_H = [conj(X), Y]; semilinear on the left."""
    x, y = _as_e(x, y)
    return symplectic_form(conjugate(x), y)


def polar_complement(s: Subspace) -> Subspace:
    """S^perp with respect to the symplectic form (the fundamental polarity)."""
    # Y -> [X, Y] has coefficient x_j' at coordinate j
    functionals = []
    for v in s.vectors():
        functionals.append((_reverse(v.lo, v.n), _reverse(v.hi, v.n)))
    return span_subspace(nullspace(s.m, functionals), s.m)
