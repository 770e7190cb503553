"""Root structure, trace/Ricci consistency and principal-ideal divisibility."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exactalg.poly import MultiPoly
from ..exactalg.polylambda import PolyLambda, polylambda_divmod
from ..exactalg.polymatrix import PolyMatrix
from ..exactalg.unipoly import UniPoly, sturm_root_profile
from ..jets import JetSequence, eval_map
from .solver import MinimalPolynomial


class RequiresPositiveDefinite(ValueError):
    pass


class NotInKernel(ValueError):
    def __init__(self, residual: PolyMatrix):
        super().__init__("Q is not annihilated by the evaluation map")
        self.residual = residual


@dataclass(frozen=True)
class RootReport:
    pure_imaginary_simple: bool
    zero_root: bool
    parity_ok: bool
    negative_mu_roots: int
    mu_degree: int


def root_structure(P: UniPoly, positive_definite: bool = True) -> RootReport:
    """Exact certificate that all roots of a monic P are purely imaginary and simple.

    Odd-offset coefficients must vanish; after removing one factor lambda
    (when P(0) = 0) the even part is q(mu) with mu = lambda^2, and q must have
    deg q distinct real roots, all strictly negative.
    """
    if not positive_definite:
        raise RequiresPositiveDefinite("diagnostic requires positive-definite metric")
    k = P.degree
    c = P.coeffs
    parity_ok = all(c[j] == 0 for j in range(k - 1, -1, -2))
    zero_root = k >= 1 and c[0] == 0
    Q = UniPoly(c[1:]) if zero_root else P
    if Q.degree <= 0:
        return RootReport(parity_ok, zero_root, parity_ok, 0, 0)
    if Q.degree % 2 or any(Q.coeffs[j] for j in range(1, Q.degree + 1, 2)):
        return RootReport(False, zero_root, parity_ok, 0, Q.degree // 2)
    q = UniPoly(Q.coeffs[0::2])
    if q.coeffs[0] == 0:
        # lambda^2 divides P: multiple zero root
        return RootReport(False, zero_root, parity_ok, 0, q.degree)
    prof = sturm_root_profile(q, "negatives")
    ok = parity_ok and prof.all_simple and prof.num_distinct_real_roots == q.degree
    return RootReport(ok, zero_root, parity_ok, prof.num_distinct_real_roots, q.degree)


def specialized_root_structure(mp: MinimalPolynomial, X, positive_definite: bool = True) -> RootReport:
    return root_structure(mp.specialize([Fraction(x) for x in X]), positive_definite)


@dataclass
class RicciReport:
    k: int
    traces_vanish: list[bool] = field(default_factory=list)  # i = 1..k
    ricci_nonzero: bool = False
    ricci_trace: MultiPoly | None = None
    top_coefficient_zero: bool = True
    k_odd: bool = False
    positive_definite: bool = True

    @property
    def consistent(self) -> bool:
        if not self.ricci_nonzero:
            return True
        ok = self.top_coefficient_zero
        if self.positive_definite:
            ok = ok and self.k_odd
        return ok


def ricci_diagnostics(seq: JetSequence, mp: MinimalPolynomial) -> RicciReport:
    k = mp.k
    ric = seq.get_jet(0).trace()
    rep = RicciReport(k, positive_definite=seq.positive_definite)
    rep.traces_vanish = [not seq.get_jet(i).trace() for i in range(1, k + 1)]
    rep.ricci_nonzero = bool(ric)
    rep.ricci_trace = ric
    rep.top_coefficient_zero = k == 0 or not mp.P.coefficient(k)
    rep.k_odd = k % 2 == 1
    return rep


@dataclass(frozen=True)
class DivisibilityReport:
    divisible: bool
    quotient: PolyLambda
    remainder: PolyLambda


def divides(seq: JetSequence, Q: PolyLambda, mp: MinimalPolynomial) -> DivisibilityReport:
    residual = eval_map(seq, Q)
    if not residual.is_zero():
        raise NotInKernel(residual)
    quot, rem = polylambda_divmod(Q, mp.P)
    return DivisibilityReport(rem.is_zero(), quot, rem)
