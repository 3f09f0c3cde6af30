"""Arithmetic in GF(2) < GF(4) = {0, 1, w, w^2}.

Elements are 2-bit codes: bit 0 is the coefficient of 1, bit 1 the
coefficient of w, so ``0, 1, 2, 3`` stand for ``0, 1, w, w^2`` (w^2 = w + 1).
Addition is XOR of codes.
"""

ZERO, ONE, W, W2 = 0, 1, 2, 3

ELEMENTS = (ZERO, ONE, W, W2)
NONZERO = (ONE, W, W2)

_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)

_CONJ = (0, 1, 3, 2)

_CHARS = "01wW"


def gf4_add(a: int, b: int) -> int:
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    return _MUL[a][b]


def gf4_conj(a: int) -> int:
    """Frobenius z -> z^2; swaps w and w^2, fixes GF(2)."""
    return _CONJ[a]


def gf4_inv(a: int) -> int:
    if a == ZERO:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    # a^3 = 1, so a^-1 = a^2
    return _CONJ[a]


def is_real(a: int) -> bool:
    return a in (ZERO, ONE)


def to_char(a: int) -> str:
    return _CHARS[a]


def from_char(c: str) -> int:
    try:
        return _CHARS.index(c)
    except ValueError:
        raise ValueError(f"not a GF(4) symbol: {c!r}") from None
