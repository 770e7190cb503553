"""Polynomials in lambda whose coefficients are MultiPoly."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, UsageError
from .unipoly import UniPoly


class PolyLambda:
    """``sum_i coeffs[i] * lambda**(k - i)`` with ``k = len(coeffs) - 1``.

    Index 0 is the leading coefficient.  Leading zero coefficients are
    stripped so that ``degree`` is the true lambda-degree.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Sequence[MultiPoly]):
        cs = list(coeffs)
        for c in cs:
            if c.nvars != nvars:
                raise UsageError("coefficient ring mismatch")
        while cs and not cs[0]:
            cs.pop(0)
        self.nvars = nvars
        self.coeffs = cs

    @classmethod
    def monic_from_tail(cls, nvars: int, tail: Sequence[MultiPoly]) -> "PolyLambda":
        """Monic polynomial ``lambda**k + tail[0] lambda**(k-1) + ... + tail[k-1]``."""
        return cls(nvars, [MultiPoly.constant(nvars, 1)] + list(tail))

    @classmethod
    def power(cls, nvars: int, k: int) -> "PolyLambda":
        zero = MultiPoly.zero(nvars)
        return cls(nvars, [MultiPoly.constant(nvars, 1)] + [zero] * k)

    @classmethod
    def one(cls, nvars: int) -> "PolyLambda":
        return cls.power(nvars, 0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> MultiPoly:
        """``a_i``: the coefficient of ``lambda**(k - i)``."""
        return self.coeffs[i]

    def coeff_of_power(self, j: int) -> MultiPoly:
        """Coefficient of ``lambda**j``."""
        k = self.degree
        if j < 0 or j > k:
            return MultiPoly.zero(self.nvars)
        return self.coeffs[k - j]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[0] == MultiPoly.constant(self.nvars, 1)

    def inhomogeneous_index(self) -> int | None:
        """First i whose a_i is not homogeneous of degree i, else None."""
        for i, c in enumerate(self.coeffs):
            if c and not c.is_homogeneous(i):
                return i
        return None

    def is_monic_homogeneous(self) -> bool:
        return self.is_monic() and self.inhomogeneous_index() is None

    def _ascending(self) -> list[MultiPoly]:
        return list(reversed(self.coeffs))

    @classmethod
    def _from_ascending(cls, nvars: int, asc: list[MultiPoly]) -> "PolyLambda":
        return cls(nvars, list(reversed(asc)))

    def __add__(self, other: "PolyLambda") -> "PolyLambda":
        a, b = self._ascending(), other._ascending()
        n = max(len(a), len(b))
        z = MultiPoly.zero(self.nvars)
        a += [z] * (n - len(a))
        b += [z] * (n - len(b))
        return PolyLambda._from_ascending(self.nvars, [x + y for x, y in zip(a, b)])

    def __neg__(self) -> "PolyLambda":
        return PolyLambda(self.nvars, [-c for c in self.coeffs])

    def __sub__(self, other: "PolyLambda") -> "PolyLambda":
        return self + (-other)

    def __mul__(self, other) -> "PolyLambda":
        if isinstance(other, (MultiPoly, int, Fraction)):
            return PolyLambda(self.nvars, [c * other for c in self.coeffs])
        a, b = self._ascending(), other._ascending()
        if not a or not b:
            return PolyLambda(self.nvars, [])
        out = [MultiPoly.zero(self.nvars) for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return PolyLambda._from_ascending(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyLambda):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, tuple(self.coeffs)))

    def specialize(self, point: Sequence[Fraction]) -> UniPoly:
        """Evaluate every coefficient at ``point``; result is in Q[lambda]."""
        return UniPoly([c.eval(point) for c in self._ascending()])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        k = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            p = k - i
            lam = "" if p == 0 else ("lambda" if p == 1 else f"lambda^{p}")
            cs = str(c)
            if not lam:
                parts.append(cs if len(c) == 1 else f"({cs})")
            elif c == MultiPoly.constant(self.nvars, 1):
                parts.append(lam)
            else:
                parts.append(f"({cs})*{lam}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"PolyLambda({self})"

    def to_json(self) -> list:
        return [c.to_term_list() for c in self.coeffs]


def polylambda_divmod(q: PolyLambda, p: PolyLambda) -> tuple[PolyLambda, PolyLambda]:
    """Divide by a lambda-monic divisor with all arithmetic in the coefficient ring."""
    if not p.is_monic():
        raise UsageError("divisor must be monic in lambda")
    if q.nvars != p.nvars:
        raise UsageError("coefficient ring mismatch")
    n = q.nvars
    rem = q._ascending()
    dp = p.degree
    pa = p._ascending()
    if len(rem) - 1 < dp:
        return PolyLambda(n, []), q
    quot = [MultiPoly.zero(n) for _ in range(len(rem) - dp)]
    for i in range(len(rem) - 1, dp - 1, -1):
        c = rem[i]
        if not c:
            continue
        quot[i - dp] = c
        for j, d in enumerate(pa):
            if d:
                rem[i - dp + j] = rem[i - dp + j] - c * d
    return PolyLambda._from_ascending(n, quot), PolyLambda._from_ascending(n, rem[:dp])
