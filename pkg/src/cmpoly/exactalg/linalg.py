"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of :class:`Fraction`.  Elimination picks the
nonzero pivot of smallest bit size in each column to contain coefficient
growth; results do not depend on that choice.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

QMatrix = list[list[Fraction]]
QVector = list[Fraction]


def to_qmatrix(rows: Sequence[Sequence]) -> QMatrix:
    return [[Fraction(x) for x in row] for row in rows]


def _size(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    a = [list(map(Fraction, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            v = a[i][c]
            if v and (best is None or _size(v) < _size(a[best][c])):
                best = i
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    a[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def q_nullspace(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[QVector]:
    """Basis of the right nullspace, one vector per free column.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns.  The list is empty exactly when ``m`` has full column rank.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][f]
        basis.append(v)
    return basis


def solve_affine(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> tuple[QVector, list[QVector]] | None:
    """Solve ``a x = b`` exactly.

    Returns ``(particular, nullspace_basis)`` or None when inconsistent.  The
    particular solution has zeros in all free columns.
    """
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][f]
        basis.append(v)
    return x, basis


def min_norm_point(particular: QVector, basis: list[QVector]) -> QVector:
    """Exact minimiser of the Euclidean norm over ``particular + span(basis)``."""
    if not basis:
        return list(particular)
    k = len(basis)
    gram = [[sum(u * v for u, v in zip(basis[i], basis[j])) for j in range(k)] for i in range(k)]
    rhs = [-sum(u * v for u, v in zip(basis[i], particular)) for i in range(k)]
    sol = solve_affine(gram, rhs)
    assert sol is not None  # Gram matrix of independent vectors is invertible
    t = sol[0]
    return [p + sum(t[i] * basis[i][j] for i in range(k)) for j, p in enumerate(particular)]


def matmul(a: QMatrix, b: QMatrix) -> QMatrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: QMatrix, v: QVector) -> QVector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: QMatrix) -> QMatrix:
    return [list(r) for r in zip(*a)]


def identity(n: int) -> QMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(a: QMatrix) -> QMatrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r[:n]]


def leading_minors(a: QMatrix) -> list[Fraction]:
    """Leading principal minors via fraction-managed elimination without pivoting."""
    n = len(a)
    m = [list(row) for row in a]
    minors = []
    det = Fraction(1)
    for k in range(n):
        piv = m[k][k]
        det *= piv
        minors.append(det)
        if piv == 0:
            minors.extend([Fraction(0)] * (n - k - 1))
            # a zero leading minor ends the Sylvester test anyway
            break
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return minors


def is_zero_matrix(a: Sequence[Sequence[Fraction]]) -> bool:
    return all(x == 0 for row in a for x in row)


def gram_nullspace(columns: Sequence[np.ndarray]) -> list[QVector]:
    """Right nullspace of a tall exact matrix given by its columns.

    Columns are integer (or object-int) arrays of equal length.  Over the
    rationals ``M v = 0`` iff ``M^T M v = 0``, so the nullspace is computed
    from the small Gram matrix with Python-int dot products.
    """
    k = len(columns)
    if k == 0:
        return []
    flat = [np.asarray(c).ravel().astype(object) for c in columns]
    gram = [[Fraction(int(np.dot(flat[i], flat[j]))) for j in range(k)] for i in range(k)]
    return q_nullspace(gram, k)
