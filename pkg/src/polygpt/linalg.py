"""Exact rational vectors and dense linear algebra.

Coordinates are plain tuples. Exact-mode code uses ``fractions.Fraction``
entries; float-mode theories reuse the same helpers with ``float`` entries
(Python's numeric protocols make the arithmetic generic).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple
Matrix = list  # list of row tuples/lists


def rat(value) -> Fraction:
    """Parse a rational from an int, a Fraction, or a "p/q" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(value: Fraction):
    """Render a rational for JSON: bare int when integral, else "p/q"."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def vector(entries: Iterable) -> Vector:
    return tuple(rat(e) for e in entries)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def rank(rows: Sequence[Sequence], tol: float = 0.0) -> int:
    """Row rank by Gaussian elimination.

    With tol=0 comparisons are exact (rational entries); a positive tol
    gives a partial-pivoting float rank for float-mode data.
    """
    m = [list(row) for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot = max(range(r, nrows), key=lambda i: abs(m[i][col]))
        if abs(m[pivot][col]) <= tol:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        for i in range(r + 1, nrows):
            if m[i][col] != 0:
                factor = m[i][col] / inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def solve_square(a: Sequence[Sequence], b: Sequence):
    """Solve the square exact system a x = b; None when singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col]
        m[col] = [v / inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [v - factor * w for v, w in zip(m[i], m[col])]
    return tuple(m[i][n] for i in range(n))


def invert(a: Sequence[Sequence]):
    """Exact inverse of a square rational matrix; None when singular."""
    n = len(a)
    cols = []
    for i in range(n):
        col = solve_square(a, unit_vector(n, i))
        if col is None:
            return None
        cols.append(col)
    return [tuple(cols[j][i] for j in range(n)) for i in range(n)]


def mat_vec(a: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in a)
