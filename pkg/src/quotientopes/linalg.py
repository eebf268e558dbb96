"""
Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. Vectors are tuples of fractions and matrices are
sequences of rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]


class SingularMatrixError(ArithmeticError):
    """Raised when an exact solve meets a singular system.

    ``rank`` is the rank found by elimination and ``dependent_row`` the index
    of an input row that is a linear combination of the others.
    """

    def __init__(self, rank: int, dependent_row: int):
        super().__init__(f"singular matrix: rank {rank}, row {dependent_row} is dependent")
        self.rank = rank
        self.dependent_row = dependent_row


def as_rational(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction.

    >>> as_rational("-3/6")
    Fraction(-1, 2)
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    """Canonical text form ``"p/q"``, or ``"p"`` when the denominator is 1.

    >>> format_rational(Fraction(28, 81)), format_rational(Fraction(-4, 2))
    ('28/81', '-2')
    """
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    """Exact inner product.

    >>> dot((-2, 1, 1), (Fraction(-1, 9), Fraction(-1, 243), Fraction(28, 243)))
    Fraction(1, 3)
    """
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    return sum((as_rational(a) * as_rational(b) for a, b in zip(u, v)), Fraction(0))


def mat_vec(A: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in A)


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(as_rational(a) - as_rational(b) for a, b in zip(u, v))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix given by its rows.

    >>> rank([(1, 2), (2, 4), (0, 0)])
    1
    """
    return len(_row_echelon(rows)[1])


def _row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    # Returns reduced rows and the original indices of the rows used as pivots.
    work = [[as_rational(a) for a in row] for row in rows]
    origin = list(range(len(work)))
    if not work:
        return work, []
    ncols = len(work[0])
    pivot_origins = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(work)) if work[k][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        origin[r], origin[p] = origin[p], origin[r]
        pivot = work[r][c]
        for k in range(r + 1, len(work)):
            factor = work[k][c] / pivot
            if factor:
                work[k] = [a - factor * b for a, b in zip(work[k], work[r])]
        pivot_origins.append(origin[r])
        r += 1
        if r == len(work):
            break
    return work, pivot_origins


def solve_linear_system(A: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square system ``A x = b`` exactly.

    Gaussian elimination with the first nonzero entry of each column as pivot.
    The solution is multiplied back against ``A`` before it is returned.

    >>> solve_linear_system([[1, 0], [0, 1]], [Fraction(1, 2), 3])
    (Fraction(1, 2), Fraction(3, 1))
    >>> solve_linear_system([[1, 2], [1, 2]], [0, 0])
    Traceback (most recent call last):
    ...
    quotientopes.linalg.SingularMatrixError: singular matrix: rank 1, row 1 is dependent
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve_linear_system expects a square system")
    aug = [[as_rational(a) for a in row] + [as_rational(bi)] for row, bi in zip(A, b)]
    order = list(range(n))
    for c in range(n):
        p = next((k for k in range(c, n) if aug[k][c] != 0), None)
        if p is None:
            r = rank(A)
            used = set(_row_echelon(A)[1])
            dependent = next(k for k in range(n) if k not in used)
            raise SingularMatrixError(r, dependent)
        aug[c], aug[p] = aug[p], aug[c]
        order[c], order[p] = order[p], order[c]
        pivot = aug[c][c]
        for k in range(n):
            if k != c and aug[k][c] != 0:
                factor = aug[k][c] / pivot
                aug[k] = [a - factor * e for a, e in zip(aug[k], aug[c])]
    x = tuple(aug[k][n] / aug[k][k] for k in range(n))
    if mat_vec(A, x) != tuple(as_rational(bi) for bi in b):
        raise ArithmeticError("multiply-back check failed")
    return x


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine span of a nonempty point set; -1 when empty.

    >>> affine_dimension([(0, 0), (1, 1), (2, 2)])
    1
    """
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 0
