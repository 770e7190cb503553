"""``cmpoly`` command line.

Exit codes: 0 verified/pass, 1 usage error, 2 rational-only relation,
3 degree bound exceeded, 4 crosscheck tolerance failure.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .dynamics import crosscheck, default_direction
from .exactalg.poly import MultiPoly, UsageError
from .exactalg.polylambda import PolyLambda
from .exactalg.rational import format_vector, parse_vector
from .jets import JetSequence, jet_dump
from .liegroup.presentation import CATALOG_DOC, InvalidPresentation, resolve_space
from .minpoly import (
    CoefficientsNotPolynomial,
    DegreeBoundExceeded,
    MinimalPolynomial,
    RequiresPositiveDefinite,
    VerificationFailed,
    c0_witness,
    default_degree_bound,
    divides,
    generic_degree,
    minimal_polynomial,
    pointwise_min_poly,
    rational_relation,
    ricci_diagnostics,
    root_structure,
    solve_coefficients,
)
from .singer import singer_invariant

EXIT_OK, EXIT_USAGE, EXIT_RATIONAL, EXIT_BOUND, EXIT_TOLERANCE = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code: int, record: dict):
        self.code = code
        self.record = record


@dataclass
class RunConfig:
    command: str
    space: str | None = None
    seed: int = 42
    samples: int = 64
    max_k: int | None = None
    verify: str = "exact"
    out: str | None = None
    direction: str | None = None
    h: float = 1e-3
    fd_step: float = 1e-2
    t_end: float = 1.0
    max_order: int = 3


def _default_seed() -> int:
    env = os.environ.get("CMPOLY_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CMPOLY_SEED must be an integer, got {env!r}") from None


def _poly_record(p: MultiPoly) -> dict:
    return {"text": str(p), "terms": p.to_term_list()}


def _root_json(rep) -> dict:
    return {"pure_imaginary_simple": rep.pure_imaginary_simple, "zero_root": rep.zero_root}


def _base(cfg: RunConfig, seq: JetSequence | None = None) -> dict:
    rec = {
        "tool": "cmpoly",
        "version": __version__,
        "command": cfg.command,
        "config": {k: v for k, v in asdict(cfg).items() if k != "command"},
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    if seq is not None:
        rec["space"] = seq.name
        rec["dim"] = seq.dim
    return rec


def _load(cfg: RunConfig) -> tuple:
    if not cfg.space:
        raise UsageError("--space is required")
    pres = resolve_space(cfg.space)
    return pres, JetSequence.from_presentation(pres)


def _direction(cfg: RunConfig, n: int) -> list[Fraction]:
    if cfg.direction is None:
        return [Fraction(x) for x in default_direction(n)]
    try:
        d = parse_vector(cfg.direction)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad direction {cfg.direction!r}: {exc}") from None
    if len(d) != n:
        raise UsageError(f"direction has {len(d)} entries, space has dimension {n}")
    return d


def _solve(cfg: RunConfig, seq: JetSequence, rec: dict):
    """Minimal polynomial, or raise _Exit with a rational-only / bound record."""
    max_k = cfg.max_k if cfg.max_k is not None else default_degree_bound(seq.dim)
    try:
        if cfg.verify == "exact":
            return minimal_polynomial(seq, cfg.seed, cfg.samples, max_k)
        return _sampled(cfg, seq, max_k)
    except DegreeBoundExceeded as exc:
        rec.update(status="degree_bound_exceeded", bound=exc.bound)
        raise _Exit(EXIT_BOUND, rec) from None
    except CoefficientsNotPolynomial as exc:
        k, _ = generic_degree(seq, max_k, cfg.seed, cfg.samples)
        rel = rational_relation(seq, k)
        rec.update(
            status="rational_relation",
            k=k,
            failed_coefficient=exc.index,
            coefficients=[{"text": str(a), **a.to_json()} for a in rel.coefficients],
            verified=rel.verified,
        )
        raise _Exit(EXIT_RATIONAL, rec) from None


def _sampled(cfg: RunConfig, seq: JetSequence, max_k: int):
    # coefficients from interpolation only; the relation is not certified symbolically
    k, witness = generic_degree(seq, max_k, cfg.seed, cfg.samples)
    P = PolyLambda.monic_from_tail(seq.dim, solve_coefficients(seq, k, cfg.seed, cfg.samples))
    return MinimalPolynomial(P, witness, False, cfg.seed, cfg.samples)


def _minpoly_record(cfg: RunConfig, seq: JetSequence, mp, rec: dict) -> dict:
    rec.update(
        status="verified" if mp.verified else "sampled",
        k=mp.k,
        P=str(mp.P),
        coefficients=[_poly_record(a) for a in mp.coefficients],
        witness=format_vector(mp.witness),
        verified=mp.verified,
        seed=mp.seed,
        samples=mp.samples,
    )
    diag = {}
    if seq.positive_definite:
        diag["root_structure"] = {"at": format_vector(mp.witness),
                                  **_root_json(root_structure(mp.specialize(mp.witness)))}
    ric = ricci_diagnostics(seq, mp)
    diag["ricci"] = {
        "ricci_nonzero": ric.ricci_nonzero,
        "ricci_trace": str(ric.ricci_trace),
        "traces_vanish": ric.traces_vanish,
        "top_coefficient_zero": ric.top_coefficient_zero,
        "consistent": ric.consistent,
    }
    n = seq.dim
    lam = PolyLambda.power(n, 1)
    x1 = PolyLambda(n, [MultiPoly.variable(n, 0)])
    closure = []
    for label, Q in (("lambda*P", lam * mp.P), ("(lambda^2+x1*lambda)*P", (lam * lam + x1 * lam) * mp.P)):
        r = divides(seq, Q, mp)
        closure.append({"Q": label, "divisible": r.divisible, "quotient": str(r.quotient)})
    diag["ideal_closure"] = closure
    if seq.curvature is not None:
        diag["singer"] = singer_invariant(seq.curvature, mp).to_json()
    rec["diagnostics"] = diag
    return rec


def cmd_catalog(cfg: RunConfig) -> tuple[int, dict]:
    rec = _base(cfg)
    rec["spaces"] = [{"name": k, "description": v} for k, v in CATALOG_DOC.items()]
    return EXIT_OK, rec


def cmd_jets(cfg: RunConfig) -> tuple[int, dict]:
    pres, seq = _load(cfg)
    rec = _base(cfg, seq)
    rec["jets"] = []
    for k in range(cfg.max_order + 1):
        d = jet_dump(seq, k)
        d["text"] = [[str(p) for p in row] for row in seq.get_jet(k).entries]
        rec["jets"].append(d)
    return EXIT_OK, rec


def cmd_minpoly(cfg: RunConfig) -> tuple[int, dict]:
    pres, seq = _load(cfg)
    rec = _base(cfg, seq)
    mp = _solve(cfg, seq, rec)
    return EXIT_OK, _minpoly_record(cfg, seq, mp, rec)


def cmd_pointwise(cfg: RunConfig) -> tuple[int, dict]:
    pres, seq = _load(cfg)
    rec = _base(cfg, seq)
    X = _direction(cfg, seq.dim)
    pw = pointwise_min_poly(seq, X)
    rec.update(direction=format_vector(X), kX=pw.kX, P=pw.P.format("lambda"),
               coefficients=format_vector(pw.P.coeffs))
    if seq.positive_definite:
        rec["root_structure"] = _root_json(root_structure(pw.P))
    try:
        mp = _solve(cfg, seq, {})
    except _Exit:
        mp = None
    if mp is not None:
        spec = mp.specialize(X)
        rec["global"] = {"P": str(mp.P), "specialized": spec.format("lambda"),
                         "divides_specialization": (spec % pw.P).is_zero()}
    return EXIT_OK, rec


def cmd_singer(cfg: RunConfig) -> tuple[int, dict]:
    pres, seq = _load(cfg)
    rec = _base(cfg, seq)
    mp = _solve(cfg, seq, rec)
    rep = singer_invariant(seq.curvature, mp)
    rec.update(status="ok" if rep.bound_holds else "bound_violated", singer=rep.to_json())
    return EXIT_OK, rec


def _crosscheck_section(cfg: RunConfig, pres, seq, mp) -> dict:
    X = _direction(cfg, seq.dim)
    w = c0_witness(seq, X, max(mp.k, 1))
    rep = crosscheck(pres, seq.curvature, mp, X, h=cfg.h, t_end=cfg.t_end, H=cfg.fd_step,
                     max_order=cfg.max_order, witness=w if w.feasible else None)
    sec = rep.to_json()
    sec["c0_witness"] = {
        "feasible": w.feasible,
        "orders_satisfied": w.orders_satisfied,
        "C": [format_vector(r) for r in w.C] if w.C is not None else None,
    }
    return sec


def cmd_crosscheck(cfg: RunConfig) -> tuple[int, dict]:
    pres, seq = _load(cfg)
    rec = _base(cfg, seq)
    mp = _solve(cfg, seq, rec)
    sec = _crosscheck_section(cfg, pres, seq, mp)
    rec["crosscheck"] = sec
    rec["status"] = "pass" if sec["ok"] else "tolerance_failure"
    return (EXIT_OK if sec["ok"] else EXIT_TOLERANCE), rec


def cmd_all(cfg: RunConfig) -> tuple[int, dict]:
    pres, seq = _load(cfg)
    rec = _base(cfg, seq)
    mp = _solve(cfg, seq, rec)
    _minpoly_record(cfg, seq, mp, rec)
    pw = pointwise_min_poly(seq, mp.witness)
    rec["pointwise_at_witness"] = {"kX": pw.kX, "P": pw.P.format("lambda")}
    sec = _crosscheck_section(cfg, pres, seq, mp)
    rec["crosscheck"] = sec
    return (EXIT_OK if sec["ok"] else EXIT_TOLERANCE), rec


COMMANDS = {
    "catalog": cmd_catalog,
    "jets": cmd_jets,
    "minpoly": cmd_minpoly,
    "pointwise": cmd_pointwise,
    "singer": cmd_singer,
    "crosscheck": cmd_crosscheck,
    "all": cmd_all,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; that code is reserved for rational-only results
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cmpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--out", help="write the JSON record here instead of stdout")
        if name == "catalog":
            continue
        p.add_argument("--space", required=True, help="catalog name, e.g. heisenberg3, or a space file")
        p.add_argument("--seed", type=int, default=None, help="sampling seed (default 42 or $CMPOLY_SEED)")
        p.add_argument("--samples", type=int, default=64)
        p.add_argument("--max-k", type=int, default=None, help="degree bound (default n(n+1)/2)")
        p.add_argument("--verify", choices=("exact", "sampled"), default="exact")
        if name in ("jets", "crosscheck", "all"):
            p.add_argument("--max-order", type=int, default=3)
        if name in ("pointwise", "crosscheck", "all"):
            p.add_argument("--direction", help='rational vector "a,b,c"')
        if name in ("crosscheck", "all"):
            p.add_argument("--h", type=float, default=1e-3, help="integration step")
            p.add_argument("--fd-step", type=float, default=1e-2, help="base finite-difference step")
            p.add_argument("--t-end", type=float, default=1.0)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for key in ("space", "samples", "max_k", "verify", "out", "direction", "h", "fd_step",
                "t_end", "max_order"):
        if getattr(args, key, None) is not None:
            setattr(cfg, key, getattr(args, key))
    seed = getattr(args, "seed", None)
    cfg.seed = seed if seed is not None else _default_seed()
    if cfg.samples < 1:
        raise UsageError("--samples must be >= 1")
    if cfg.h <= 0 or cfg.t_end <= 0 or cfg.fd_step <= 0:
        raise UsageError("--h, --fd-step and --t-end must be positive")
    return cfg


def render(record: dict) -> str:
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        code, rec = COMMANDS[cfg.command](cfg)
    except _Exit as exc:
        code, rec = exc.code, exc.record
    except (UsageError, InvalidPresentation, RequiresPositiveDefinite, VerificationFailed) as exc:
        print(f"cmpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(rec)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
