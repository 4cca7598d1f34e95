"""Exact dense simplex over ``fractions.Fraction``.

Only the form needed for matrix games is supported::

    maximize c @ x  subject to  A @ x <= b,  x >= 0,  with b >= 0

so the slack basis is feasible from the start and no phase one is needed.
Bland's rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Unbounded(ArithmeticError):
    pass


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]]:
    """Return ``(optimum, x)`` with exact rational entries."""
    m, n = len(A), len(c)
    if any(Fraction(bi) < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    # rows: [A | I | b]; objective row holds reduced costs -c
    T = [[Fraction(v) for v in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [Fraction(b[i])]
         for i in range(m)]
    z = [-Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective is unbounded")
        pivot_row = T[leave]
        pv = pivot_row[enter]
        if pv != 1:
            pivot_row[:] = [v / pv for v in pivot_row]
        for i in range(m):
            f = T[i][enter]
            if i != leave and f:
                row = T[i]
                for j, pj in enumerate(pivot_row):
                    if pj:
                        row[j] -= f * pj
        f = z[enter]
        z = [zj - f * pj for zj, pj in zip(z, pivot_row)]
        basis[leave] = enter
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i][-1]
    return z[-1], x
