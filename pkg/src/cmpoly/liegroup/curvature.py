"""Levi-Civita data of a left-invariant metric and its curvature derivatives.

All tensors are left-invariant, so they are stored by their components at
the identity.  ``D_k`` has axes ``(W_1, ..., W_k, Y, U, V, out)``: derivative
slots first, then the curvature arguments, then the output coordinate.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from ..exactalg.linalg import inverse
from ..exactalg.poly import MultiPoly, UsageError
from ..exactalg.polymatrix import PolyMatrix
from .inttensor import IntTensor, working_dtype
from .presentation import LiePresentation


class DegenerateMetric(ValueError):
    pass


@dataclass(frozen=True)
class ConnectionMap:
    """``alpha(e_i, e_j) = sum_k coeffs[i, j, k] e_k``, i.e. ``nabla_{e_i} e_j``."""

    coeffs: IntTensor

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def __call__(self, i: int, j: int) -> list[Fraction]:
        return [self.coeffs[i, j, k] for k in range(self.dim)]

    def apply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        f = x[i] * y[j]
                        for k in range(n):
                            out[k] += f * self.coeffs[i, j, k]
        return out

    def as_float(self) -> np.ndarray:
        return self.coeffs.to_float()


def koszul(pres: LiePresentation) -> ConnectionMap:
    """Levi-Civita bilinear map from the Koszul formula on left-invariant fields:
    ``2<a(X,Y),Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>``."""
    n = pres.dim
    g = [list(r) for r in pres.metric]
    try:
        ginv = inverse(g)
    except ZeroDivisionError as exc:
        raise DegenerateMetric("degenerate metric") from exc
    c = pres.brackets
    # b[i][j][l] = <[e_i, e_j], e_l>
    b = [[[sum(c[i][j][m] * g[m][l] for m in range(n)) for l in range(n)] for j in range(n)]
         for i in range(n)]
    alpha = np.empty((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            rhs = [(b[i][j][l] - b[j][l][i] + b[l][i][j]) / 2 for l in range(n)]
            for k in range(n):
                alpha[i, j, k] = sum(ginv[k][l] * rhs[l] for l in range(n))
    return ConnectionMap(IntTensor.from_fractions(alpha))


def _contract(a: np.ndarray, b: np.ndarray, axes) -> np.ndarray:
    return np.tensordot(a, b, axes=axes)


def _first_curvature(pres: LiePresentation, alpha: ConnectionMap) -> IntTensor:
    """``D_0(Y,U)V = a(Y,a(U,V)) - a(U,a(Y,V)) - a([Y,U],V)``."""
    A = alpha.coeffs.num.astype(object)
    da = alpha.coeffs.den
    C = IntTensor.from_fractions(np.array(pres.brackets, dtype=object))
    Cn, dc = C.num.astype(object), C.den
    t1 = np.transpose(_contract(A, A, ([2], [1])), (2, 0, 1, 3))  # (u,v,y,o) -> (y,u,v,o)
    t2 = np.transpose(_contract(A, A, ([2], [1])), (0, 2, 1, 3))  # (y,v,u,o) -> (y,u,v,o)
    t3 = _contract(Cn, A, ([2], [0]))  # (y,u,v,o)
    num = (t1 - t2) * dc - t3 * da
    return IntTensor(num, da * da * dc).normalized()


def _derive(d: IntTensor, alpha: ConnectionMap) -> IntTensor:
    """One more covariant derivative: the derivation by ``a(W_0, .)`` on every slot."""
    n = d.shape[0]
    nslots = d.ndim - 1
    bound = (nslots + 1) * n * alpha.coeffs.max_abs() * d.max_abs()
    dt = working_dtype(bound)
    A = alpha.coeffs.as_dtype(dt)
    D = d.as_dtype(dt)
    # a(W0, D(...)): contract the output axis
    out = np.moveaxis(_contract(A, D, ([1], [nslots])), 1, -1)
    for s in range(nslots):
        term = _contract(A, D, ([2], [s]))  # (w0, slot, remaining...)
        out = out - np.moveaxis(term, 1, 1 + s)
    return IntTensor(out, alpha.coeffs.den * d.den).normalized()


class CurvatureTensor:
    """Lazily extended sequence ``D_0, D_1, ...`` of exact component arrays."""

    def __init__(self, pres: LiePresentation, alpha: ConnectionMap, max_order: int = 0):
        self.pres = pres
        self.alpha = alpha
        self._levels: list[IntTensor] = [_first_curvature(pres, alpha)]
        self._lock = threading.Lock()
        self.extend(max_order)

    @property
    def dim(self) -> int:
        return self.pres.dim

    @property
    def max_order(self) -> int:
        return len(self._levels) - 1

    def extend(self, order: int) -> None:
        with self._lock:
            while len(self._levels) <= order:
                self._levels.append(_derive(self._levels[-1], self.alpha))

    def component(self, k: int) -> IntTensor:
        if k > self.max_order:
            self.extend(k)
        return self._levels[k]

    def __getitem__(self, k: int) -> IntTensor:
        return self.component(k)

    def value(self, k: int, derivs: Sequence[int], y: int, u: int, v: int) -> list[Fraction]:
        d = self.component(k)
        idx = tuple(derivs) + (y, u, v)
        return [d[idx + (o,)] for o in range(self.dim)]


def curvature_derivatives(pres: LiePresentation, alpha: ConnectionMap, max_order: int) -> CurvatureTensor:
    return CurvatureTensor(pres, alpha, max_order)


def _monomial_groups(n: int, nfactors: int) -> tuple[np.ndarray, np.ndarray]:
    """For every index tuple of length ``nfactors`` (C order), the id of its
    exponent vector; returns (exponent rows, inverse ids)."""
    total = n**nfactors
    idx = np.arange(total)
    counts = np.zeros((total, n), dtype=np.int64)
    for _ in range(nfactors):
        idx, digit = np.divmod(idx, n)
        counts[np.arange(total), digit] += 1
    exps, inv = np.unique(counts, axis=0, return_inverse=True)
    return exps, inv.ravel()


def symmetrized_jet(D: CurvatureTensor, k: int) -> PolyMatrix:
    """Entry (a, b) is the e_a-component of ``D_k(X, ..., X; e_b, X, X)``."""
    if k < 0:
        raise UsageError("jet order must be non-negative")
    if k > D.max_order:
        raise UsageError(f"jet order {k} exceeds computed order {D.max_order}")
    n = D.dim
    comp = D.component(k)
    # axes (w1..wk, y, u, v, o) -> (w1..wk, u, v, y, o)
    perm = list(range(k)) + [k + 1, k + 2, k, k + 3]
    arr = np.transpose(comp.num, perm).reshape(n ** (k + 2), n, n)
    exps, inv = _monomial_groups(n, k + 2)
    bound = comp.max_abs() * n ** (k + 2)
    dt = working_dtype(bound)
    sums = np.zeros((len(exps), n, n), dtype=dt)
    np.add.at(sums, inv, arr.astype(dt) if arr.dtype != dt else arr)
    exp_tuples = [tuple(int(v) for v in e) for e in exps]
    entries = []
    for a in range(n):
        row = []
        for b in range(n):
            col = sums[:, b, a]
            terms = {exp_tuples[u]: Fraction(int(col[u]), comp.den) for u in np.nonzero(col)[0]}
            row.append(MultiPoly(n, terms))
        entries.append(row)
    return PolyMatrix(entries, k + 2, nvars=n)


def jet_at(D: CurvatureTensor, k: int, point: Sequence[Fraction]) -> list[list[Fraction]]:
    """Exact ``R^k(X)`` at a rational point by direct tensor contraction."""
    n = D.dim
    pt = [Fraction(x) for x in point]
    den_x = lcm(*(x.denominator for x in pt))
    xi = [int(x * den_x) for x in pt]
    comp = D.component(k)
    bound = comp.max_abs() * (n * max(abs(v) for v in xi) + 1) ** (k + 2) if any(xi) else 0
    dt = working_dtype(bound)
    x = np.array(xi, dtype=dt)
    t = comp.as_dtype(dt)
    for _ in range(k):
        t = np.tensordot(x, t, axes=([0], [0]))
    # t has axes (y, u, v, o)
    t = np.tensordot(t, x, axes=([2], [0]))  # (y, u, o)
    t = np.tensordot(t, x, axes=([1], [0]))  # (y, o)
    scale = comp.den * den_x ** (k + 2)
    return [[Fraction(int(t[b, a]), scale) for b in range(n)] for a in range(n)]

