"""Exact search for a skew endomorphism C with ``[C, R^i(X)] = R^{i+1}(X)``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactalg.linalg import QMatrix, inverse, matmul, min_norm_point, solve_affine
from ..exactalg.poly import UsageError
from ..jets import JetOrderUnavailable, JetSequence, qmatrix_commutator


@dataclass(frozen=True)
class C0Witness:
    X: tuple[Fraction, ...]
    C: QMatrix | None
    orders_satisfied: int
    feasible: bool
    solution_dim: int = 0  # dimension of the affine solution set

    def is_skew(self, metric: QMatrix) -> bool:
        if self.C is None:
            return False
        gc = matmul(metric, self.C)
        n = len(gc)
        return all(gc[i][j] + gc[j][i] == 0 for i in range(n) for j in range(n))


def skew_basis(metric: QMatrix) -> list[QMatrix]:
    """``G^{-1}(E_ab - E_ba)`` for a < b: a basis of the G-skew endomorphisms."""
    n = len(metric)
    ginv = inverse([[Fraction(x) for x in r] for r in metric])
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                m[i][b] += ginv[i][a]
                m[i][a] -= ginv[i][b]
            out.append(m)
    return out


def _flat(m):
    return [x for row in m for x in row]


def _orders_satisfied(C: QMatrix, jets: list[QMatrix]) -> int:
    m = 0
    while m + 1 < len(jets) and qmatrix_commutator(C, jets[m]) == jets[m + 1]:
        m += 1
    return m


def c0_witness(seq: JetSequence, X: Sequence, orders: int, extra: int = 1) -> C0Witness:
    """Least-norm G-skew C solving the first ``orders`` commutator equations at X.

    ``orders_satisfied`` is measured up to ``orders + extra`` when those jets exist,
    so a reported value above ``orders`` is evidence the same C keeps working.
    """
    if orders < 1:
        raise UsageError("orders must be >= 1")
    X = tuple(Fraction(x) for x in X)
    jets = []
    for i in range(orders + extra + 1):
        try:
            jets.append(seq.jet_at(i, X))
        except JetOrderUnavailable:
            if i <= orders:
                raise
            break
    basis = skew_basis(seq.metric)
    n = seq.dim
    if not basis:
        ok = all(not any(_flat(j)) for j in jets[1:orders + 1])
        zero = [[Fraction(0)] * n for _ in range(n)]
        return C0Witness(X, zero if ok else None, _orders_satisfied(zero, jets) if ok else 0, ok)
    cols = []
    for B in basis:
        col = []
        for i in range(orders):
            col += _flat(qmatrix_commutator(B, jets[i]))
        cols.append(col)
    rhs = []
    for i in range(orders):
        rhs += _flat(jets[i + 1])
    rows = [list(r) for r in zip(*cols)]
    sol = solve_affine(rows, rhs)
    if sol is None:
        return C0Witness(X, None, 0, False)
    s = min_norm_point(*sol)
    C = [[sum(s[b] * basis[b][i][j] for b in range(len(basis))) for j in range(n)] for i in range(n)]
    return C0Witness(X, C, _orders_satisfied(C, jets), True, len(sol[1]))
