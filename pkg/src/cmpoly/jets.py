"""Jet sequences ``R^0, R^1, ...`` from three sources, the evaluation map,
admissibility and structural validation."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactalg.linalg import QMatrix, identity, matmul
from .exactalg.poly import MultiPoly, UsageError, variables
from .exactalg.polylambda import PolyLambda
from .exactalg.polymatrix import PolyMatrix
from .liegroup.curvature import CurvatureTensor, curvature_derivatives, jet_at, koszul, symmetrized_jet
from .liegroup.presentation import LiePresentation


class JetOrderUnavailable(LookupError):
    pass


@dataclass(frozen=True)
class C0Generator:
    """Jets generated by ``R^{k+1}(X) = [C(X), R^k(X)]`` with C linear in X."""

    R0: PolyMatrix
    C: PolyMatrix
    skew_checked: bool = False

    def __post_init__(self):
        if self.R0.declared_degree not in (2, None) or not all(
            p.is_homogeneous(2) for p in self.R0.flatten()
        ):
            raise UsageError("R0 must be homogeneous of degree 2")
        if not all(p.is_homogeneous(1) for p in self.C.flatten()):
            raise UsageError("C must be linear in X")

    def check_skew(self, metric: QMatrix) -> bool:
        """``G C(X) + C(X)^T G == 0`` as a polynomial identity."""
        G = PolyMatrix.constant(metric, self.C.nvars)
        return ((G @ self.C) + (self.C.transpose() @ G)).is_zero()


class JetSequence:
    """Provider of ``R^k`` (declared degree k+2) together with the metric Gram matrix."""

    def __init__(self, dim: int, metric: QMatrix, *, explicit: Sequence[PolyMatrix] | None = None,
                 curvature: CurvatureTensor | None = None, generator: C0Generator | None = None,
                 name: str = "jets", positive_definite: bool = True):
        sources = [s is not None for s in (explicit, curvature, generator)]
        if sum(sources) != 1:
            raise UsageError("exactly one jet source is required")
        self.dim = dim
        self.metric = [[Fraction(x) for x in row] for row in metric]
        self.name = name
        self.positive_definite = positive_definite
        self._explicit = list(explicit) if explicit is not None else None
        self.curvature = curvature
        self.generator = generator
        if generator is not None and generator.skew_checked and not generator.check_skew(self.metric):
            raise UsageError("C(X) is not skew with respect to the metric")
        self._cache: dict[int, PolyMatrix] = {}
        self._lock = threading.Lock()

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_presentation(cls, pres: LiePresentation, max_order: int = 0) -> "JetSequence":
        D = curvature_derivatives(pres, koszul(pres), max_order)
        return cls(pres.dim, [list(r) for r in pres.metric], curvature=D, name=pres.name,
                   positive_definite=pres.positive_definite)

    @classmethod
    def from_list(cls, jets: Sequence[PolyMatrix], metric: QMatrix | None = None,
                  name: str = "explicit") -> "JetSequence":
        if not jets:
            raise UsageError("explicit jet list is empty")
        n = jets[0].dim
        return cls(n, metric if metric is not None else identity(n), explicit=jets, name=name)

    @classmethod
    def from_generator(cls, gen: C0Generator, metric: QMatrix | None = None,
                       name: str = "c0-generator") -> "JetSequence":
        n = gen.R0.dim
        return cls(n, metric if metric is not None else identity(n), generator=gen, name=name)

    @property
    def nvars(self) -> int:
        return self.dim

    @property
    def available_orders(self) -> int | None:
        """Largest order available, or None when unbounded."""
        return len(self._explicit) - 1 if self._explicit is not None else None

    # -- jets -------------------------------------------------------------
    def get_jet(self, k: int) -> PolyMatrix:
        if k < 0:
            raise UsageError("jet order must be non-negative")
        cached = self._cache.get(k)
        if cached is not None:
            return cached
        if self._explicit is not None:
            if k >= len(self._explicit):
                raise JetOrderUnavailable(f"jet order {k} unavailable (list has {len(self._explicit)})")
            jet = self._explicit[k]
        elif self.curvature is not None:
            self.curvature.extend(k)
            jet = symmetrized_jet(self.curvature, k)
        else:
            if k == 0:
                jet = self.generator.R0
            else:
                prev = self.get_jet(k - 1)
                jet = self.generator.C.commutator(prev)
                jet = PolyMatrix(jet.entries, k + 2, nvars=self.dim)
        with self._lock:
            # write-once: a concurrent writer computed the same value
            return self._cache.setdefault(k, jet)

    def jet_at(self, k: int, point: Sequence[Fraction]) -> QMatrix:
        """Exact ``R^k(X)`` at a rational point."""
        if self.curvature is not None and k not in self._cache:
            return jet_at(self.curvature, k, point)
        return self.get_jet(k).eval(point)

    def jets(self, k: int) -> list[PolyMatrix]:
        return [self.get_jet(i) for i in range(k + 1)]

    def metric_norm(self) -> MultiPoly:
        return MultiPoly.quadratic_form(self.metric)


def eval_map(seq: JetSequence, P: PolyLambda) -> PolyMatrix:
    """``sum_i a_i R^{k-i}`` as an exact PolyMatrix."""
    n = seq.dim
    out = PolyMatrix.zeros(n, n)
    k = P.degree
    for i, a in enumerate(P.coeffs):
        if a:
            out = out + seq.get_jet(k - i).scale(a)
    return out


@dataclass(frozen=True)
class AdmissibilityReport:
    polynomial: PolyLambda
    residual: PolyMatrix
    is_admissible: bool


def check_admissible(seq: JetSequence, P: PolyLambda) -> AdmissibilityReport:
    if not P.is_monic():
        raise UsageError("polynomial must be monic in lambda")
    bad = P.inhomogeneous_index()
    if bad is not None:
        raise UsageError(
            f"coefficient a_{bad} is not homogeneous of degree {bad}: {P.coefficient(bad)}"
        )
    residual = eval_map(seq, P)
    return AdmissibilityReport(P, residual, residual.is_zero())


@dataclass
class ValidationReport:
    max_k: int
    homogeneity: list[int] = field(default_factory=list)
    self_adjointness: list[int] = field(default_factory=list)
    annihilates_direction: bool = True

    @property
    def ok(self) -> bool:
        return not self.homogeneity and not self.self_adjointness and self.annihilates_direction

    def violations(self) -> list[str]:
        out = [f"R^{k} not homogeneous of degree {k + 2}" for k in self.homogeneity]
        out += [f"G R^{k}(X) is not symmetric" for k in self.self_adjointness]
        if not self.annihilates_direction:
            out.append("R^0(X) X != 0")
        return out


def validate(seq: JetSequence, max_k: int) -> ValidationReport:
    report = ValidationReport(max_k)
    G = PolyMatrix.constant(seq.metric, seq.dim)
    for k in range(max_k + 1):
        try:
            jet = seq.get_jet(k)
        except JetOrderUnavailable:
            break
        if any(p and not p.is_homogeneous(k + 2) for p in jet.flatten()):
            report.homogeneity.append(k)
        gr = G @ jet
        if gr != gr.transpose():
            report.self_adjointness.append(k)
    xs = variables(seq.dim)
    report.annihilates_direction = all(not p for p in seq.get_jet(0).apply(xs))
    return report


def qmatrix_commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    ab, ba = matmul(a, b), matmul(b, a)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)]


def jet_dump(seq: JetSequence, k: int) -> dict:
    """Structured-text dump of ``R^k`` (indices 1-based)."""
    jet = seq.get_jet(k)
    return {"dim": seq.dim, "order": k, "entries": jet.to_entry_list()}


def jet_from_dump(data: dict) -> PolyMatrix:
    n, k = int(data["dim"]), int(data["order"])
    entries = [[MultiPoly.zero(n) for _ in range(n)] for _ in range(n)]
    for row, col, terms in data["entries"]:
        entries[int(row) - 1][int(col) - 1] = MultiPoly.from_term_list(n, terms)
    return PolyMatrix(entries, k + 2, nvars=n)
