"""Univariate rational polynomials: division, gcd, Sturm chains."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import UsageError
from .rational import format_rational


class UniPoly:
    """Polynomial in one variable; ``coeffs[i]`` multiplies ``t**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "UniPoly":
        return cls(list(reversed(list(coeffs))))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc()
        return UniPoly([c * inv for c in self.coeffs])

    def __add__(self, other: "UniPoly") -> "UniPoly":
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [Fraction(0)] * (n - len(self.coeffs))
        b = other.coeffs + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-_as_uni(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_uni(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not divisor.coeffs:
            raise UsageError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = divisor.degree
        lc = divisor.lc()
        if len(rem) - 1 < db:
            return UniPoly(), UniPoly(rem)
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lc
            quot[i - db] = q
            for j, d in enumerate(divisor.coeffs):
                rem[i - db + j] -= q * d
        return UniPoly(quot), UniPoly(rem[:db])

    def __mod__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divmod(divisor)[0]

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, t):
        acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def sign_at_pos_inf(self) -> int:
        return (self.lc() > 0) - (self.lc() < 0)

    def sign_at_neg_inf(self) -> int:
        s = self.sign_at_pos_inf()
        return s if self.degree % 2 == 0 else -s

    def __str__(self) -> str:
        return self.format("t")

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def _as_uni(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly([x])


def unipoly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    return a.divmod(b)


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero when both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(q: UniPoly) -> UniPoly:
    g = gcd(q, q.derivative())
    return (q // g).monic() if g.degree > 0 else q.monic()


def sturm_chain(q: UniPoly) -> list[UniPoly]:
    chain = [q, q.derivative()]
    while chain[-1]:
        r = chain[-2] % chain[-1]
        if not r:
            break
        chain.append(-r)
    return [p for p in chain if p]


def _variations(signs: list[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(q: UniPoly, lo=None, hi=None) -> int:
    """Distinct real roots in the half-open interval (lo, hi]; None means infinity.

    Finite endpoints that are roots are handled by the Sturm theorem applied to
    the squarefree part, which is well defined for (lo, hi] with root endpoints.
    """
    if q.degree <= 0:
        return 0
    sq = squarefree_part(q)
    chain = sturm_chain(sq)

    def v_at(t):
        if t == "-inf":
            return _variations([p.sign_at_neg_inf() for p in chain])
        if t == "+inf":
            return _variations([p.sign_at_pos_inf() for p in chain])
        return _variations([_sign(p(t)) for p in chain])

    a = "-inf" if lo is None else lo
    b = "+inf" if hi is None else hi
    # squarefree chains count roots in (a, b] even when a or b is a root
    return v_at(a) - v_at(b)


@dataclass(frozen=True)
class RootProfile:
    num_distinct_real_roots: int
    all_simple: bool


def sturm_root_profile(q: UniPoly, interval: str = "all") -> RootProfile:
    """Count distinct real roots of q in all reals, (-inf, 0) or (0, inf)."""
    if not q:
        raise UsageError("root profile of the zero polynomial is undefined")
    g = gcd(q, q.derivative())
    all_simple = g.degree <= 0
    zero_root = q(Fraction(0)) == 0
    if interval in ("all", "reals"):
        n = count_real_roots(q)
    elif interval in ("negatives", "neg"):
        n = count_real_roots(q, None, Fraction(0)) - int(zero_root)
    elif interval in ("positives", "pos"):
        n = count_real_roots(q, Fraction(0), None)
    else:
        raise UsageError(f"unknown interval {interval!r}")
    return RootProfile(n, all_simple)
