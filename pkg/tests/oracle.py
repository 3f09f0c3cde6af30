"""Slow, dense reference arithmetic used only as a test oracle.

GF(4) elements are codes 0..3 (0, 1, w, w^2) but products are expanded from
polynomials in w modulo w^2 + w + 1, and tensors are plain coordinate lists.
"""

import itertools


def mul(a, b):
    a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
    # (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
    const = (a0 * b0 + a1 * b1) % 2
    lin = (a0 * b1 + a1 * b0 + a1 * b1) % 2
    return const | (lin << 1)


def add(a, b):
    return a ^ b


def power(a, k):
    out = 1
    for _ in range(k):
        out = mul(out, a)
    return out


def conj(a):
    return mul(a, a)


def total(values):
    out = 0
    for v in values:
        out = add(out, v)
    return out


def outer(factors):
    """Coordinates of a_1 x ... x a_m; i_1 is the most significant index bit."""
    m = len(factors)
    coords = []
    for bits in itertools.product((0, 1), repeat=m):
        c = 1
        for k, b in enumerate(bits):
            c = mul(c, factors[k][b])
        coords.append(c)
    return coords


def sym(x, y):
    n = len(x)
    return total(mul(x[i], y[n - 1 - i]) for i in range(n))


def quad(x):
    n = len(x)
    return total(mul(x[i], x[n - 1 - i]) for i in range(n // 2))


def herm(x, y):
    return sym([conj(c) for c in x], y)


def proportional(x, y):
    return any([mul(c, v) for v in x] == list(y) for c in (1, 2, 3))


def gf2_vectors(n):
    return [list(bits) for bits in itertools.product((0, 1), repeat=n)]
