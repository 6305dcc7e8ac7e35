"""Small exact matrix toolkit over :class:`fractions.Fraction`.

Matrices are tuples of row tuples.  A matrix with zero rows still needs a
column count, so shapes are passed explicitly where they can't be inferred.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Matrix = Tuple[Tuple[Fraction, ...], ...]

_RATIONAL_RE = re.compile(r"^(-?(?:0|[1-9][0-9]*))(?:/([1-9][0-9]*))?$")


def frac(x) -> Fraction:
    """Exact conversion; floats and bools are rejected."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact/boolean value {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` with ``q > 0`` and ``gcd(p, q) = 1``."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    value = Fraction(num, den)
    if value.numerator != num or value.denominator != den:
        raise ValueError(f"rational {text!r} is not in lowest terms")
    return value


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def matrix(rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
    out = tuple(tuple(frac(v) for v in row) for row in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and out and len(out[0]) != ncols:
        raise ValueError(f"expected {ncols} columns, got {len(out[0])}")
    return out


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple((Fraction(0),) * ncols for _ in range(nrows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(m: Matrix, ncols: int) -> Matrix:
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(ncols))


def matmul(x: Matrix, y: Matrix, inner: int, ncols: int) -> Matrix:
    if len(y) != inner or (x and len(x[0]) != inner):
        raise ValueError("dimension mismatch in matrix product")
    return tuple(
        tuple(sum((row[k] * y[k][j] for k in range(inner)), Fraction(0)) for j in range(ncols))
        for row in x
    )


def matvec(m: Matrix, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def scale(c: Rational, m: Matrix) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * v for v in row) for row in m)


def add(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(x, y))


def is_integral(m: Matrix) -> bool:
    return all(v.denominator == 1 for row in m for v in row)


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination; det of 0x0 is 1."""
    n = len(m)
    a = [list(row) for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return result


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)
