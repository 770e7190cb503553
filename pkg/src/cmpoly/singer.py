"""Stabilizer algebras of the curvature derivatives and the Singer invariant.

``g(j)`` is the set of G-skew endomorphisms A with ``A . nabla^i R = 0`` for
all i <= j, where A acts on tensors as a derivation.  Everything is exact:
each level is the nullspace of a stacked integer system, computed from its
Gram matrix over the ``n(n-1)/2`` skew parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .exactalg.linalg import QMatrix, matmul, q_nullspace
from .exactalg.poly import UsageError
from .liegroup.curvature import CurvatureTensor
from .liegroup.inttensor import IntTensor, working_dtype
from .minpoly.c0 import skew_basis
from .minpoly.solver import MinimalPolynomial


def _is_skew(A: QMatrix, G: QMatrix) -> bool:
    ga = matmul(G, A)
    n = len(A)
    return all(ga[i][j] + ga[j][i] == 0 for i in range(n) for j in range(n))


def _int_matrix(A: QMatrix) -> tuple[np.ndarray, int]:
    den = lcm(*(Fraction(x).denominator for row in A for x in row))
    return np.array([[int(Fraction(x) * den) for x in row] for row in A], dtype=object), den


def _action_num(A: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Derivation action on a tensor with axes (slots..., out); integer in, integer out."""
    nslots = T.ndim - 1
    bound = (nslots + 1) * A.shape[0] * int(np.max(np.abs(A), initial=0)) * int(np.max(np.abs(T), initial=0))
    dt = working_dtype(bound)
    A, T = A.astype(dt), T.astype(dt)
    out = np.tensordot(T, A, axes=([nslots], [1]))
    for s in range(nslots):
        out = out - np.moveaxis(np.tensordot(A, T, axes=([0], [s])), 0, s)
    return out


def tensor_action(A: QMatrix, T: IntTensor, metric: QMatrix) -> IntTensor:
    """``(A.T)(Y_1..Y_s) = A(T(Y_1..Y_s)) - sum_i T(.., A Y_i, ..)``."""
    if not _is_skew(A, metric):
        raise UsageError("A is not skew with respect to the metric")
    An, dA = _int_matrix(A)
    return IntTensor(_action_num(An, T.num.astype(object)), dA * T.den).normalized()


class _Levels:
    """Per-level Gram matrices of the action over the fixed skew basis."""

    def __init__(self, D: CurvatureTensor):
        self.D = D
        self.metric = [list(r) for r in D.pres.metric]
        self.basis = skew_basis(self.metric)
        self.ints = [_int_matrix(B)[0] for B in self._common(self.basis)]
        self.grams: list[list[list[int]]] = []

    @staticmethod
    def _common(basis):
        # rescale all basis matrices to one denominator so columns stay commensurable
        den = lcm(1, *(x.denominator for B in basis for row in B for x in row))
        return [[[x * den for x in row] for row in B] for B in basis]

    def gram(self, i: int) -> list[list[int]]:
        while len(self.grams) <= i:
            level = len(self.grams)
            T = self.D.component(level).num.astype(object)
            cols = [_action_num(A, T).ravel() for A in self.ints]
            m = len(cols)
            self.grams.append([[int(np.dot(cols[a], cols[b])) for b in range(m)] for a in range(m)])
        return self.grams[i]

    def stacked(self, j: int) -> list[list[int]]:
        m = len(self.basis)
        total = [[0] * m for _ in range(m)]
        for i in range(j + 1):
            g = self.gram(i)
            for a in range(m):
                for b in range(m):
                    total[a][b] += g[a][b]
        return total

    def nullspace(self, j: int) -> list[list[Fraction]]:
        m = len(self.basis)
        if m == 0:
            return []
        return q_nullspace([[Fraction(x) for x in row] for row in self.stacked(j)], m)

    def satisfies(self, t: list[Fraction], j: int) -> bool:
        """``M_i t = 0`` for all i <= j, via ``t^T (M_i^T M_i) t = 0``."""
        m = len(t)
        for i in range(j + 1):
            g = self.gram(i)
            if sum(t[a] * g[a][b] * t[b] for a in range(m) for b in range(m)):
                return False
        return True

    def matrix(self, t: list[Fraction]) -> QMatrix:
        n = len(self.metric)
        return [[sum(t[b] * self.basis[b][r][c] for b in range(len(t))) for c in range(n)] for r in range(n)]


def stabilizer_algebra(D: CurvatureTensor, j: int) -> list[QMatrix]:
    lv = _Levels(D)
    return [lv.matrix(t) for t in lv.nullspace(j)]


def in_stabilizer(D: CurvatureTensor, j: int, A: QMatrix) -> bool:
    metric = [list(r) for r in D.pres.metric]
    return all(tensor_action(A, D.component(i), metric).is_zero() for i in range(j + 1))


@dataclass
class SingerReport:
    dims: list[int] = field(default_factory=list)
    k_singer: int | None = None
    bound_deg_k: int = 0
    bound_holds: bool = False
    nested: bool = True

    def to_json(self) -> dict:
        return {"dims": self.dims, "k_singer": self.k_singer, "k": self.bound_deg_k,
                "bound_holds": self.bound_holds}


def singer_invariant(D: CurvatureTensor, P: MinimalPolynomial | int) -> SingerReport:
    """Dimension chain ``dim g(0..k+1)`` and the first level where it stabilizes.

    Stabilization at j is accepted only after checking that every basis
    vector of g(j) also lies in g(j+1); nesting of g(j+1) in g(j) is checked
    the same way.
    """
    k = P if isinstance(P, int) else P.k
    D.extend(k + 1)
    lv = _Levels(D)
    rep = SingerReport(bound_deg_k=k)
    bases = [lv.nullspace(j) for j in range(k + 2)]
    rep.dims = [len(b) for b in bases]
    for j in range(k + 1):
        rep.nested &= all(lv.satisfies(t, j) for t in bases[j + 1])
        if rep.k_singer is None and rep.dims[j] == rep.dims[j + 1] and all(
            lv.satisfies(t, j + 1) for t in bases[j]
        ):
            rep.k_singer = j
    rep.bound_holds = rep.nested and rep.k_singer is not None and rep.k_singer <= k
    return rep
