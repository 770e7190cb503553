"""Lie algebras with an inner product, the space-file format, and the catalog."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from ..exactalg.linalg import leading_minors, rank
from ..exactalg.poly import UsageError
from ..exactalg.rational import format_rational

Structure = tuple[tuple[tuple[Fraction, ...], ...], ...]
Gram = tuple[tuple[Fraction, ...], ...]


class InvalidPresentation(ValueError):
    pass


@dataclass(frozen=True)
class LiePresentation:
    """Structure constants ``brackets[i][j][k]`` with ``[e_i, e_j] = sum_k c_ij^k e_k``
    and the Gram matrix of the metric in the basis ``e_i``."""

    name: str
    dim: int
    brackets: Structure
    metric: Gram
    positive_definite: bool = True
    params: Mapping[str, Fraction] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.validate()

    @classmethod
    def build(cls, name: str, dim: int, brackets: Mapping[tuple[int, int], Sequence],
              metric: Sequence[Sequence], positive_definite: bool = True,
              params: Mapping[str, Fraction] | None = None) -> "LiePresentation":
        """Build from 0-based ``{(i, j): coeffs}`` for i < j (antisymmetry is filled in)."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if len(coeffs) != dim:
                raise InvalidPresentation(f"bracket [e{i + 1}, e{j + 1}] needs {dim} coefficients")
            for k, v in enumerate(coeffs):
                v = Fraction(v)
                if c[i][j][k] and c[i][j][k] != v:
                    raise InvalidPresentation(f"bracket [e{i + 1}, e{j + 1}] given twice")
                c[i][j][k] = v
                c[j][i][k] = -v
        g = tuple(tuple(Fraction(x) for x in row) for row in metric)
        return cls(
            name=name,
            dim=dim,
            brackets=tuple(tuple(tuple(r) for r in plane) for plane in c),
            metric=g,
            positive_definite=positive_definite,
            params=dict(params or {}),
        )

    def validate(self) -> None:
        n = self.dim
        c, g = self.brackets, self.metric
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise InvalidPresentation("structure constants have the wrong shape")
        if len(g) != n or any(len(r) != n for r in g):
            raise InvalidPresentation("metric has the wrong shape")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise InvalidPresentation(f"bracket not antisymmetric at ({i + 1},{j + 1})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        s = sum(
                            c[j][k][m] * c[i][m][l] + c[k][i][m] * c[j][m][l] + c[i][j][m] * c[k][m][l]
                            for m in range(n)
                        )
                        if s:
                            raise InvalidPresentation(
                                f"Jacobi identity fails for (e{i + 1}, e{j + 1}, e{k + 1})"
                            )
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise InvalidPresentation("metric is not symmetric")
        if rank([list(r) for r in g]) < n:
            raise InvalidPresentation("degenerate metric")
        if self.positive_definite and any(m <= 0 for m in leading_minors([list(r) for r in g])):
            raise InvalidPresentation("metric is not positive definite (flag it as indefinite)")

    def bracket(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.brackets[i][j]

    def to_json(self) -> dict:
        n = self.dim
        br = []
        for i in range(n):
            for j in range(i + 1, n):
                if any(self.brackets[i][j]):
                    br.append([i + 1, j + 1, [format_rational(x) for x in self.brackets[i][j]]])
        return {
            "name": self.name,
            "dim": n,
            "brackets": br,
            "metric": [[format_rational(x) for x in row] for row in self.metric],
            "positive_definite": self.positive_definite,
        }


def from_json(data: Mapping) -> LiePresentation:
    try:
        n = int(data["dim"])
        brackets: dict[tuple[int, int], list[Fraction]] = {}
        for i, j, coeffs in data.get("brackets", []):
            i, j = int(i) - 1, int(j) - 1
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise InvalidPresentation(f"bad bracket indices ({i + 1}, {j + 1})")
            vals = [Fraction(str(v)) for v in coeffs]
            if i > j:
                i, j, vals = j, i, [-v for v in vals]
            brackets[(i, j)] = vals
        metric = [[Fraction(str(v)) for v in row] for row in data["metric"]]
        return LiePresentation.build(
            name=str(data.get("name", "unnamed")),
            dim=n,
            brackets=brackets,
            metric=metric,
            positive_definite=bool(data.get("positive_definite", True)),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidPresentation):
            raise
        raise InvalidPresentation(f"malformed space description: {exc}") from exc


def load_space_file(path: str | Path) -> LiePresentation:
    with open(path) as fh:
        return from_json(json.load(fh))


# -- catalog -------------------------------------------------------------

def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _su2_brackets(offset: int = 0, dim: int = 3) -> dict[tuple[int, int], list[Fraction]]:
    def vec(k):
        v = [Fraction(0)] * dim
        v[offset + k] = Fraction(1)
        return v

    a, b, c = offset, offset + 1, offset + 2
    return {(a, b): vec(2), (b, c): vec(0), (a, c): [-x for x in vec(1)]}


def _positive(params: Mapping, key: str) -> Fraction:
    if key not in params:
        raise UsageError(f"missing parameter {key!r}")
    v = Fraction(params[key])
    if v <= 0:
        raise UsageError(f"parameter {key} must be positive, got {v}")
    return v


def _odd_dim(params: Mapping) -> int:
    d = int(params.get("dim", 3))
    if d < 3 or d % 2 == 0:
        raise UsageError(f"Heisenberg dimension must be odd and >= 3, got {d}")
    return d


def _heisenberg_brackets(d: int) -> dict[tuple[int, int], list[Fraction]]:
    z = [Fraction(0)] * (d - 1) + [Fraction(1)]
    return {(2 * i, 2 * i + 1): z for i in range((d - 1) // 2)}


def _flat(params):
    n = int(params.get("dim", 3))
    if n < 1:
        raise UsageError("dimension must be positive")
    return n


CATALOG_DOC = {
    "flat_n": "abelian R^n with the Euclidean metric (flat); e.g. flat_3",
    "torus_n": "abelian presentation of the flat torus T^n; e.g. torus_3",
    "su2_biinvariant": "su(2), [e1,e2]=e3 cyclic, bi-invariant metric (round S^3)",
    "su2_berger(t)": "su(2) with metric diag(1,1,t^2): Berger sphere family, t > 0",
    "su2_x_torus(m)": "su(2) + R^m, bi-invariant x flat (S^3 x T^m, locally symmetric)",
    "heisenberg(2n+1)": "Heisenberg algebra of type H, [e_{2i-1},e_{2i}]=z, orthonormal",
    "heisenberg_scaled(2n+1, c)": "Heisenberg algebra with the metric scaled by 1/c^2, c > 0",
}


def catalog(name: str, params: Mapping[str, Fraction | int] | None = None) -> LiePresentation:
    """Catalog presentation by identifier.

    Parameters: ``dim`` for flat/torus/heisenberg families, ``t`` for the
    Berger family, ``c`` for the scaled Heisenberg metric, ``m`` for the torus
    factor of ``su2_x_torus``.
    """
    params = dict(params or {})
    if name in ("flat_n", "flat"):
        n = _flat(params)
        return LiePresentation.build(f"flat_{n}", n, {}, _identity(n))
    if name in ("torus_n", "torus"):
        n = _flat(params)
        return LiePresentation.build(f"torus_{n}", n, {}, _identity(n))
    if name == "su2_biinvariant":
        return LiePresentation.build(name, 3, _su2_brackets(), _identity(3))
    if name == "su2_berger":
        t = _positive(params, "t")
        g = _identity(3)
        g[2][2] = t * t
        return LiePresentation.build(
            f"su2_berger({format_rational(t)})", 3, _su2_brackets(), g, params={"t": t}
        )
    if name == "su2_x_torus":
        m = int(params.get("m", 1))
        if m < 0:
            raise UsageError("torus factor dimension must be >= 0")
        return LiePresentation.build(
            f"su2_x_torus({m})", 3 + m, _su2_brackets(0, 3 + m), _identity(3 + m), params={"m": m}
        )
    if name == "heisenberg":
        d = _odd_dim(params)
        return LiePresentation.build(f"heisenberg({d})", d, _heisenberg_brackets(d), _identity(d))
    if name == "heisenberg_scaled":
        d = _odd_dim(params)
        c = _positive(params, "c")
        g = [[x / (c * c) for x in row] for row in _identity(d)]
        return LiePresentation.build(
            f"heisenberg_scaled({d},{format_rational(c)})", d, _heisenberg_brackets(d), g,
            params={"c": c},
        )
    raise UsageError(f"unknown catalog space {name!r}; see `cmpoly catalog`")


_CALL = re.compile(r"^([a-z0-9_]+?)\s*\((.*)\)$")
_SUFFIX = re.compile(r"^(flat|torus|heisenberg)_?(\d+)$")


def resolve_space(spec: str) -> LiePresentation:
    """Resolve ``heisenberg3``, ``heisenberg(5)``, ``su2_berger(1/2)``, ``flat_3``,
    ``heisenberg_scaled(3,2)`` or a path to a space file."""
    s = spec.strip()
    if s.endswith(".json") or Path(s).is_file():
        return load_space_file(s)
    m = _SUFFIX.match(s)
    if m:
        return catalog(m.group(1), {"dim": int(m.group(2))})
    m = _CALL.match(s)
    if m:
        name, args = m.group(1), [a.strip() for a in m.group(2).split(",") if a.strip()]
        try:
            if name in ("heisenberg", "flat", "torus", "flat_n", "torus_n"):
                return catalog(name, {"dim": int(args[0])})
            if name == "heisenberg_scaled":
                return catalog(name, {"dim": int(args[0]), "c": Fraction(args[1])})
            if name == "su2_berger":
                return catalog(name, {"t": Fraction(args[0])})
            if name == "su2_x_torus":
                return catalog(name, {"m": int(args[0])})
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad parameters in {spec!r}: {exc}") from exc
    return catalog(s)
