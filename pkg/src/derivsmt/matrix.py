"""Small dense matrix routines over exact rings.

Matrices are plain lists of rows.  Entries may be ``GaussianRational`` or
``RatPoly`` (or ints); anything with ring operations and an ``exact_div``
method works.
"""

from __future__ import annotations

from typing import Sequence

from .scalarpoly import ZERO, as_gaussian

__all__ = ["det", "rank", "matmul", "submatrix", "identity", "transpose", "inverse"]


def _exact_div(a, b):
    if not hasattr(a, "exact_div"):
        a = as_gaussian(a)
    return a.exact_div(b)


def det(M: Sequence[Sequence]):
    """Fraction-free Bareiss elimination; exact over any integral domain."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    A = [list(row) for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0 * A[0][0]
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = row_i[j] * akk - aik * row_k[j]
                row_i[j] = v if prev is None else _exact_div(v, prev)
            row_i[k] = 0 * akk
        prev = akk
    result = A[n - 1][n - 1]
    return -result if sign < 0 else result


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the Gaussian rationals by Gaussian elimination."""
    A = [[as_gaussian(x) for x in row] for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        for i in range(r + 1, rows):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(M: Sequence[Sequence]) -> list[list]:
    """Inverse over the Gaussian rationals (Gauss-Jordan)."""
    n = len(M)
    A = [[as_gaussian(x) for x in row] + [as_gaussian(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if A and len(A[0]) != len(B):
        raise ValueError("inner dimensions do not match")
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = ZERO
            for a, brow in zip(row, B):
                b = brow[j]
                if a and b:
                    acc = a * b + acc
            new.append(acc)
        out.append(new)
    return out


def submatrix(M: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]) -> list[list]:
    return [[M[i][j] for j in cols] for i in rows]


def identity(n: int) -> list[list]:
    return [[as_gaussian(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]
