"""Rational functions as numerator/denominator pairs of MultiPoly.

Reduction is heuristic (content, common monomial factor, exact division);
equality always goes through cross-multiplication, so correctness never
depends on how far a fraction was reduced.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, NotExactlyDivisible, UsageError


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = MultiPoly.constant(num.nvars, 1)
        if num.nvars != den.nvars:
            raise UsageError("numerator and denominator live in different rings")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den
        if reduce:
            self._reduce()

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def _reduce(self) -> None:
        num, den = self.num, self.den
        if not num:
            self.num = num
            self.den = MultiPoly.constant(num.nvars, 1)
            return
        if not den.is_constant():
            try:
                q = num.exact_div(den)
            except NotExactlyDivisible:
                mn, md = num.monomial_gcd(), den.monomial_gcd()
                common = tuple(min(a, b) for a, b in zip(mn, md))
                if any(common):
                    num, den = num.shift_down(common), den.shift_down(common)
            else:
                num, den = q, MultiPoly.constant(num.nvars, 1)
        # monic denominator
        _, lc = den.leading_term()
        scale = Fraction(1) / lc
        self.num = num * scale
        self.den = den * scale

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> MultiPoly:
        if self.den.is_constant():
            return self.num * (1 / self.den.constant_term())
        try:
            return self.num.exact_div(self.den)
        except NotExactlyDivisible as exc:
            raise ValueError(f"{self} is not a polynomial") from exc

    def try_polynomial(self) -> MultiPoly | None:
        try:
            return self.as_polynomial()
        except ValueError:
            return None

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(MultiPoly.constant(self.nvars, other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    # cross-multiplication equality admits no canonical hash
    __hash__ = None

    def eval(self, point):
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("point lies on the denominator's vanishing locus")
        return self.num.eval(point) / d

    def __str__(self) -> str:
        if self.den.is_constant():
            c = self.den.constant_term()
            return str(self.num * (1 / c))
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_term_list(), "den": self.den.to_term_list()}
