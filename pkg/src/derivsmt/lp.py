"""Exact two-phase simplex over ``Fraction`` with Bland's rule.

Solves ``max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0``.  Problem
sizes here are a few dozen variables and a few hundred rows, so a dense
tableau is fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "linprog_max"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, allowed: int) -> bool:
    """Maximize the objective stored in the last row as ``-c``; Bland's rule.

    Returns False if unbounded.
    """
    m = len(T) - 1
    obj = T[-1]
    while True:
        obj = T[-1]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best, best_row = None, None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[best_row]):
                    best, best_row = ratio, i
        if best_row is None:
            return False
        _pivot(T, basis, best_row, col)


def linprog_max(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    nvar = len(c)
    rows = [([Fraction(v) for v in a], Fraction(b), True) for a, b in zip(A_ub, b_ub)]
    rows += [([Fraction(v) for v in a], Fraction(b), False) for a, b in zip(A_eq, b_eq)]
    nslack = sum(1 for _, _, ub in rows if ub)
    m = len(rows)
    # a <= row with b >= 0 starts with its slack basic; the rest need artificials
    needs_art = [not (ub and b >= 0) for _, b, ub in rows]
    nart = sum(needs_art)
    width = nvar + nslack
    ncols = width + nart
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s = a_idx = 0
    zero, one = Fraction(0), Fraction(1)
    for i, (a, b, is_ub) in enumerate(rows):
        line = a + [zero] * (nslack + nart) + [b]
        slack_col = None
        if is_ub:
            slack_col = nvar + s
            line[slack_col] = one
            s += 1
        if b < 0:
            line = [-v for v in line]
        if needs_art[i]:
            line[width + a_idx] = one
            basis.append(width + a_idx)
            a_idx += 1
        else:
            basis.append(slack_col)
        T.append(line)
    # phase 1: maximize -(sum of artificials)
    obj = [zero] * (ncols + 1)
    for i, line in enumerate(T):
        if needs_art[i]:
            for j in range(width):
                obj[j] -= line[j]
            obj[-1] -= line[-1]
    T.append(obj)
    _run(T, basis, width)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive remaining (zero-valued) artificials out of the basis
    for r in range(m):
        if basis[r] >= width:
            col = next((j for j in range(width) if T[r][j] != 0), None)
            if col is not None:
                _pivot(T, basis, r, col)
    keep = [r for r in range(m) if basis[r] < width]
    T = [T[r][:width] + [T[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]
    # phase 2
    obj = [-Fraction(v) for v in c] + [zero] * nslack + [zero]
    for r, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [x - f * y for x, y in zip(obj, T[r])]
    T.append(obj)
    if not _run(T, basis, width):
        return LPResult("unbounded")
    x = [zero] * nvar
    for r, b in enumerate(basis):
        if b < nvar:
            x[b] = T[r][-1]
    return LPResult("optimal", tuple(x), T[-1][-1])
