"""Small exact linear algebra over :class:`fractions.Fraction`.

Everything here is rational and exact; matrices are plain nested sequences.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

Matrix = Sequence[Sequence[Fraction]]


class SingularMatrixError(ArithmeticError):
    pass


def as_fraction(x) -> Fraction:
    """Coerce ints/Fractions (and integral strings) to Fraction; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def lcd(values: Iterable) -> int:
    """Least common denominator of a collection of rationals (1 if empty)."""
    out = 1
    for v in values:
        out = math.lcm(out, as_fraction(v).denominator)
    return out


def is_integral(x) -> bool:
    return as_fraction(x).denominator == 1


def det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[as_fraction(x) for x in row] for row in m]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        out *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row, prow = a[r], a[col]
                for c in range(col, n):
                    row[c] -= f * prow[c]
    return sign * out


def leading_minors(m: Matrix) -> list[Fraction]:
    return [det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_negative_definite_matrix(m: Matrix) -> bool:
    """Sylvester's criterion for -m: minors alternate in sign starting negative."""
    if not m:
        raise ValueError("empty matrix")
    return all((-1) ** k * d > 0 for k, d in enumerate(leading_minors(m), start=1))


def solve(m: Matrix, rhs: Sequence) -> list[Fraction]:
    """Solve ``m x = rhs`` exactly by Gauss-Jordan elimination."""
    n = len(m)
    if any(len(row) != n for row in m) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    a = [[as_fraction(x) for x in row] + [as_fraction(b)] for row, b in zip(m, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        prow = a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], prow)]
    return [row[n] for row in a]
