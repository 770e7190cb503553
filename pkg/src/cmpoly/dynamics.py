"""Floating-point cross-checks along geodesics.

Everything is left-trivialized: a geodesic is a solution of ``V' = -a(V, V)``
and parallel transport solves ``Phi' = -A(V) Phi`` with ``A(V)w = a(V, w)``.
The transported Jacobi operator ``Phi^-1 J(V) Phi`` is differentiated
numerically at t = 0 and compared with the exact jets.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm

from .exactalg.poly import MultiPoly, UsageError
from .liegroup.curvature import ConnectionMap, CurvatureTensor, koszul
from .liegroup.presentation import LiePresentation

EPS = np.finfo(float).eps
MAX_FD_ORDER = 4

# central stencils on offsets -2..2 (scaled by H^order)
_STENCILS = {
    0: (np.array([0, 0, 1, 0, 0.0]), 1.0),
    1: (np.array([0, -1, 0, 1, 0.0]), 2.0),
    2: (np.array([0, 1, -2, 1, 0.0]), 1.0),
    3: (np.array([-1, 2, 0, -2, 1.0]), 2.0),
    4: (np.array([1, -4, 6, -4, 1.0]), 1.0),
}


@dataclass(frozen=True)
class TrajectoryState:
    t: float
    V: np.ndarray
    Phi: np.ndarray


@dataclass
class Path:
    """Fixed-step samples ``t = i*h`` for ``i0 <= i <= i1``."""

    h: float
    i0: int
    V: np.ndarray  # (N, n)
    Phi: np.ndarray  # (N, n, n)
    metric: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return (np.arange(len(self.V)) + self.i0) * self.h

    def index(self, t: float) -> int:
        i = round(t / self.h)
        if abs(i * self.h - t) > 1e-9 * max(1.0, abs(t)):
            raise UsageError(f"t={t} is not on the integration grid (h={self.h})")
        j = i - self.i0
        if not 0 <= j < len(self.V):
            raise UsageError(f"t={t} outside the integrated range")
        return j

    def last_index(self, t: float) -> int:
        """Index of the last grid point at or before ``t`` (clipped to the path)."""
        j = math.floor(t / self.h + 1e-9) - self.i0
        return max(0, min(j, len(self.V) - 1))

    def state(self, t: float) -> TrajectoryState:
        j = self.index(t)
        return TrajectoryState(j * self.h + self.i0 * self.h, self.V[j], self.Phi[j])

    def states(self) -> list[TrajectoryState]:
        return [TrajectoryState(t, v, p) for t, v, p in zip(self.times, self.V, self.Phi)]

    def speed_drift(self) -> float:
        G = self.metric
        e = np.einsum("ni,ij,nj->n", self.V, G, self.V)
        return float(np.max(np.abs(e - e[-self.i0])))

    def isometry_drift(self) -> float:
        G = self.metric
        d = np.einsum("nki,kl,nlj->nij", self.Phi, G, self.Phi) - G
        return float(np.max(np.linalg.norm(d, axis=(1, 2))))


def _rk4(alpha: np.ndarray, V: np.ndarray, Phi: np.ndarray, h: float, steps: int):
    def f(v, p):
        A = np.einsum("i,ijk->kj", v, alpha)
        return -A @ v, -A @ p

    Vs, Ps = [V], [Phi]
    for _ in range(steps):
        k1 = f(V, Phi)
        k2 = f(V + h / 2 * k1[0], Phi + h / 2 * k1[1])
        k3 = f(V + h / 2 * k2[0], Phi + h / 2 * k2[1])
        k4 = f(V + h * k3[0], Phi + h * k3[1])
        V = V + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        Phi = Phi + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        Vs.append(V)
        Ps.append(Phi)
    return Vs, Ps


def integrate(pres: LiePresentation, alpha: ConnectionMap, X0: Sequence[float], t_end: float,
              h: float = 1e-3, t_start: float = 0.0) -> Path:
    """Classical RK4 on the grid ``t = i*h`` covering ``[t_start, t_end]`` (t_start <= 0)."""
    if h <= 0 or t_end <= 0:
        raise UsageError("h and t_end must be positive")
    if t_start > 0:
        raise UsageError("t_start must be <= 0")
    a = alpha.as_float()
    V0 = np.asarray(X0, dtype=float)
    n = len(V0)
    fwd = _rk4(a, V0, np.eye(n), h, math.ceil(t_end / h - 1e-9))
    nb = math.ceil(-t_start / h - 1e-9)
    bwd = _rk4(a, V0, np.eye(n), -h, nb) if nb else ([V0], [np.eye(n)])
    V = np.array(bwd[0][:0:-1] + fwd[0])
    Phi = np.array(bwd[1][:0:-1] + fwd[1])
    G = np.array([[float(x) for x in r] for r in pres.metric])
    return Path(h, -nb, V, Phi, G)


def jacobi_operator(D0: np.ndarray, V: np.ndarray) -> np.ndarray:
    """``J[a, b]``: e_a-component of ``R(e_b, V)V``; D0 axes (y, u, v, out)."""
    return np.einsum("yuvo,u,v->oy", D0, V, V)


def jet_float(D: CurvatureTensor, k: int, X: Sequence[float]) -> np.ndarray:
    x = np.asarray(X, dtype=float)
    t = D.component(k).to_float()
    for _ in range(k):
        t = np.tensordot(x, t, axes=([0], [0]))
    return np.einsum("yuvo,u,v->oy", t, x, x)


def transported_jacobi(path: Path, D: CurvatureTensor) -> Callable[[float], np.ndarray]:
    D0 = D.component(0).to_float()

    def rt(t: float) -> np.ndarray:
        s = path.state(t)
        return np.linalg.solve(s.Phi, jacobi_operator(D0, s.V) @ s.Phi)

    return rt


@dataclass
class FDJet:
    order: int
    value: np.ndarray
    truncation: float
    roundoff: float
    unreliable: bool


def fd_grid_step(H: float, h: float) -> float:
    """Largest integration step <= h that divides H/4."""
    q = H / 4
    return q / math.ceil(q / h - 1e-12)


def finite_difference_jets(path: Path, D: CurvatureTensor, max_order: int,
                           H: float = 1e-2, noise_tol: float = 1e-4) -> list[FDJet]:
    """Central differences of the transported Jacobi operator at t = 0 with
    step sizes H, H/2, H/4 and two Richardson eliminations (error O(H^6))."""
    if max_order > MAX_FD_ORDER:
        raise UsageError(f"finite differences are limited to order {MAX_FD_ORDER}")
    rt = transported_jacobi(path, D)
    steps = [H, H / 2, H / 4]
    cache: dict[float, np.ndarray] = {}

    def f(t):
        key = round(t / path.h)
        if key not in cache:
            cache[key] = rt(t)
        return cache[key]

    scale = max(np.linalg.norm(f(0.0)), 1e-300)
    out = []
    for i in range(max_order + 1):
        w, c = _STENCILS[i]
        est = []
        for s in steps:
            vals = [f(m * s) for m in (-2, -1, 0, 1, 2)]
            est.append(sum(wm * v for wm, v in zip(w, vals)) / (c * s**i))
        if i == 0:
            out.append(FDJet(0, est[0], 0.0, 0.0, False))
            continue
        r1 = [(4 * est[1] - est[0]) / 3, (4 * est[2] - est[1]) / 3]
        r2 = (16 * r1[1] - r1[0]) / 15
        trunc = float(np.linalg.norm(r2 - r1[1]))
        # float noise in the samples (rounding and integrator), amplified by the stencil
        noise = 64 * EPS * scale * float(np.sum(np.abs(w))) / (c * steps[-1] ** i)
        mag = max(float(np.linalg.norm(r2)), scale)
        out.append(FDJet(i, r2, trunc, noise, bool(noise > noise_tol * mag)))
    return out


def killing_constancy(path: Path, coefficients: Sequence[MultiPoly], t_end: float | None = None) -> list[float]:
    """``max_t |a(V(t)) - a(V(0))|`` over grid points with 0 <= t <= t_end."""
    j0 = -path.i0
    j1 = len(path.V) if t_end is None else path.last_index(t_end) + 1
    Vs = path.V[j0:j1]
    drifts = []
    for a in coefficients:
        vals = np.array([a.eval_float(v) for v in Vs])
        drifts.append(float(np.max(np.abs(vals - vals[0]))))
    return drifts


def conjugation_check(path: Path, D: CurvatureTensor, C: np.ndarray | Sequence, t_end: float | None = None,
                      stride: int = 10) -> float:
    """``max_t ||R~(t) - exp(tC) R~(0) exp(-tC)||_F``."""
    C = np.asarray([[float(x) for x in r] for r in C])
    rt = transported_jacobi(path, D)
    r0 = rt(0.0)
    j1 = len(path.V) - 1 if t_end is None else path.last_index(t_end)
    worst = 0.0
    for j in range(-path.i0, j1 + 1, stride):
        t = (j + path.i0) * path.h
        E = expm(t * C)
        pred = E @ r0 @ np.linalg.inv(E)
        worst = max(worst, float(np.linalg.norm(rt(t) - pred)))
    return worst


@dataclass
class CrosscheckReport:
    X0: list[float]
    h: float
    H: float
    t_end: float
    orders: list[dict] = field(default_factory=list)
    relation_residual: float | None = None
    killing_drift: list[float] = field(default_factory=list)
    negative_control_drift: float | None = None
    conjugation_residual: float | None = None
    conjugation_orders: int | None = None
    speed_drift: float = 0.0
    isometry_drift: float = 0.0
    tolerances: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def failures(self) -> list[str]:
        tol = self.tolerances
        bad = [f"order {o['i']} rel_error {o['rel_error']:.3g}" for o in self.orders
               if not o["unreliable"] and o["rel_error"] > tol["jet_rel"]]
        if self.relation_residual is not None and self.relation_residual > tol["relation"]:
            bad.append(f"relation residual {self.relation_residual:.3g}")
        bad += [f"killing drift a_{i + 1} {d:.3g}" for i, d in enumerate(self.killing_drift)
                if d > tol["killing"]]
        return bad

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "X0": self.X0,
            "orders": self.orders,
            "relation_residual": self.relation_residual,
            "killing_drift": self.killing_drift,
            "negative_control_drift": self.negative_control_drift,
            "conjugation_residual": self.conjugation_residual,
            "conjugation_orders": self.conjugation_orders,
            "speed_drift": self.speed_drift,
            "isometry_drift": self.isometry_drift,
            "h": self.h,
            "H": self.H,
            "t_end": self.t_end,
            "tolerances": self.tolerances,
            "ok": self.ok,
            "failures": self.failures,
        }


def relative_error(approx: np.ndarray, exact: np.ndarray, floor: float = 1e-12) -> float:
    """Frobenius relative error; absolute when the exact value is (numerically) zero."""
    n = float(np.linalg.norm(exact))
    return float(np.linalg.norm(approx - exact)) / (n if n > floor else 1.0)


def default_direction(n: int) -> list[int]:
    d = [0] * n
    d[0] = 1
    d[-1] += 1
    return d


def crosscheck(pres: LiePresentation, D: CurvatureTensor, mp, direction: Sequence | None = None, *,
               h: float = 1e-3, t_end: float = 1.0, H: float = 1e-2, max_order: int = 3,
               witness=None, jet_rel: float = 1e-5, relation_tol: float = 1e-5,
               killing_tol: float = 1e-8) -> CrosscheckReport:
    """Numeric jets, relation residual, Killing drift and conjugation residual at
    the G-unit vector along ``direction``.

    ``mp`` is a verified minimal polynomial; ``witness`` a feasible C0Witness
    computed at ``direction`` itself (C is rescaled, being linear in X).
    """
    t0 = time.perf_counter()
    n = pres.dim
    d = np.array([float(x) for x in (direction or default_direction(n))])
    G = np.array([[float(x) for x in r] for r in pres.metric])
    norm = math.sqrt(float(d @ G @ d))
    if norm == 0:
        raise UsageError("direction must be nonzero")
    X0 = d / norm
    step = fd_grid_step(H, h)
    path = integrate(pres, koszul(pres), X0, max(t_end, 2 * H), step, t_start=-2 * H)
    D.extend(max_order)
    rep = CrosscheckReport(
        X0=[float(x) for x in X0], h=step, H=H, t_end=t_end,
        tolerances={"jet_rel": jet_rel, "relation": relation_tol, "killing": killing_tol},
    )
    fd = finite_difference_jets(path, D, max_order, H)
    for j in fd[1:]:
        exact = jet_float(D, j.order, X0)
        rep.orders.append({"i": j.order, "rel_error": relative_error(j.value, exact),
                           "truncation": j.truncation, "unreliable": bool(j.unreliable)})
    if mp is not None and 1 <= mp.k <= max_order:
        total = fd[mp.k].value.copy()
        for i, a in enumerate(mp.coefficients, start=1):
            total += a.eval_float(X0) * fd[mp.k - i].value
        rep.relation_residual = float(np.linalg.norm(total))
    if mp is not None:
        rep.killing_drift = killing_constancy(path, mp.coefficients, t_end)
    rep.negative_control_drift = killing_constancy(path, [MultiPoly.variable(n, 0) ** 2], t_end)[0]
    if witness is not None and witness.C is not None:
        C = np.array([[float(x) for x in r] for r in witness.C]) / norm
        rep.conjugation_orders = witness.orders_satisfied
        rep.conjugation_residual = conjugation_check(path, D, C, t_end)
    rep.speed_drift = path.speed_drift()
    rep.isometry_drift = path.isometry_drift()
    rep.runtime = time.perf_counter() - t0
    return rep
