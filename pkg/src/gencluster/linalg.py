"""Small exact linear algebra over fields of exact elements.

Works for ``Fraction`` entries as well as :class:`~gencluster.symalg.RationalFn`
entries; matrices are lists of rows.  Sizes here are tiny (n <= 8), so plain
Python loops are fine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def _zero_like(x):
    return x * 0


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def to_fractions(m) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in np.asarray(m, dtype=object).tolist()]


def identity(n: int, one, zero) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Matrix product; entries of ``a`` and ``b`` may be mixed exact scalars."""
    bt = transpose(b)
    zero = a[0][0] * b[0][0] * 0
    out = []
    for row in a:
        new_row = []
        for col in bt:
            acc = zero
            for u, v in zip(row, col):
                if not (_is_zero(u) or _is_zero(v)):
                    acc = acc + u * v
            new_row.append(acc)
        out.append(new_row)
    return out


def scale_columns(m, d: Sequence) -> list[list]:
    """``m @ diag(d)``."""
    return [[u * c for u, c in zip(row, d)] for row in m]


def scale_rows(d: Sequence, m) -> list[list]:
    """``diag(d) @ m``."""
    return [[c * u for u in row] for c, row in zip(d, m)]


def det(m: Sequence[Sequence], divide=None):
    """Determinant by fraction-free (Bareiss) elimination.

    ``divide(a, b)`` performs the exact divisions (default ``a / b``); pass an
    exact polynomial division to stay inside a polynomial ring.
    """
    divide = divide or (lambda u, v: u / v)
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return _zero_like(a[0][0])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else divide(v, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def inverse(m: Sequence[Sequence]) -> list[list]:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` if singular."""
    n = len(m)
    zero = _zero_like(m[0][0])
    one = zero + 1
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not _is_zero(a[i][k])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = one / a[k][k]
        a[k] = [v * inv for v in a[k]]
        for i in range(n):
            if i != k and not _is_zero(a[i][k]):
                f = a[i][k]
                a[i] = [u - f * v for u, v in zip(a[i], a[k])]
    return [row[n:] for row in a]


def rank(m) -> int:
    """Exact rank of a rational matrix."""
    a = to_fractions(m)
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def int_det(m) -> Fraction:
    return det(to_fractions(m)) if len(m) else Fraction(1)
