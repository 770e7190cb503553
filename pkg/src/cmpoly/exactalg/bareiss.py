"""Fraction-free elimination over the polynomial ring.

Entries stay polynomial during elimination: every division in the Bareiss
update is exact, so we use :meth:`MultiPoly.exact_div`.  Only the final
back-substitution produces rational functions.
"""
from __future__ import annotations

from typing import Sequence

from .poly import MultiPoly
from .ratfunc import RationalFunction


def _pick_pivot(a: list[list[MultiPoly]], r: int, c: int) -> int | None:
    best = None
    best_key = None
    for i in range(r, len(a)):
        p = a[i][c]
        if p:
            key = (len(p), p.bit_size())
            if best is None or key < best_key:
                best, best_key = i, key
    return best


def bareiss_echelon(m: Sequence[Sequence[MultiPoly]]) -> tuple[list[list[MultiPoly]], list[int]]:
    """Fraction-free row echelon form and pivot columns."""
    a = [list(row) for row in m]
    if not a:
        return a, []
    nvars = a[0][0].nvars
    nrows, ncols = len(a), len(a[0])
    prev = MultiPoly.constant(nvars, 1)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = _pick_pivot(a, r, c)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            for j in range(c + 1, ncols):
                v = piv * a[i][j]
                if f:
                    v = v - f * a[r][j]
                a[i][j] = v.exact_div(prev) if v else v
            a[i][c] = MultiPoly.zero(nvars)
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def bareiss_nullspace(m: Sequence[Sequence[MultiPoly]]) -> list[list[RationalFunction]]:
    """Right nullspace over the rational-function field.

    One basis vector per free column, with a 1 in that column.
    """
    if not m:
        return []
    ncols = len(m[0])
    nvars = m[0][0].nvars
    e, pivots = bareiss_echelon(m)
    free = [c for c in range(ncols) if c not in pivots]
    one = MultiPoly.constant(nvars, 1)
    zero = MultiPoly.zero(nvars)
    basis = []
    for f in free:
        x: list[RationalFunction] = [RationalFunction(zero) for _ in range(ncols)]
        x[f] = RationalFunction(one)
        for row_idx in range(len(pivots) - 1, -1, -1):
            pc = pivots[row_idx]
            row = e[row_idx]
            acc = RationalFunction(zero)
            for j in range(pc + 1, ncols):
                if row[j] and x[j].num:
                    acc = acc + x[j] * row[j]
            x[pc] = -acc / RationalFunction(row[pc])
        basis.append(x)
    return basis
