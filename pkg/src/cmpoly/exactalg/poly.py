"""Sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero :class:`Fraction`
coefficients.  Instances are immutable and hashable, so they can key caches
and live inside frozen containers.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .rational import format_rational

Exponent = tuple[int, ...]


class UsageError(ValueError):
    """Raised when an operation is called with incompatible arguments."""


class NotExactlyDivisible(ArithmeticError):
    pass


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise UsageError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Fraction | int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Fraction | int = 1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def quadratic_form(cls, gram: Sequence[Sequence[Fraction]]) -> "MultiPoly":
        """The polynomial ``x^T G x``."""
        n = len(gram)
        terms: dict[Exponent, Fraction] = {}
        for i in range(n):
            for j in range(n):
                c = Fraction(gram[i][j])
                if c:
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    e = tuple(e)
                    terms[e] = terms.get(e, 0) + c
        return cls(n, terms)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms, or None when mixed (0 poly gives None)."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, d: int | None = None) -> bool:
        if not self.terms:
            return True
        hd = self.homogeneous_degree()
        return hd is not None and (d is None or hd == d)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def bit_size(self) -> int:
        return sum(c.numerator.bit_length() + c.denominator.bit_length() for c in self.terms.values())

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise UsageError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise UsageError("negative powers are not polynomials")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Fraction | int) -> "MultiPoly":
        return self * Fraction(c)

    def divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division by one polynomial w.r.t. graded-lex order."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = divisor.leading_term()
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        outside: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, lt_e)):
                qe = tuple(a - b for a, b in zip(e, lt_e))
                qc = c / lt_c
                quot[qe] = quot.get(qe, 0) + qc
                for de, dc in divisor.terms.items():
                    if de == lt_e:
                        continue
                    te = _add_exp(qe, de)
                    v = rem.get(te, 0) - qc * dc
                    if v:
                        rem[te] = v
                    else:
                        rem.pop(te, None)
            else:
                outside[e] = c
        return MultiPoly(self.nvars, quot), MultiPoly._raw(self.nvars, outside)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(divisor)
        if r:
            raise NotExactlyDivisible(f"{divisor} does not divide {self}")
        return q

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = 0
        dens = 1
        for c in self.terms.values():
            nums = gcd(nums, c.numerator)
            dens = lcm(dens, c.denominator)
        return Fraction(nums, dens)

    def monomial_gcd(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            m = [min(a, b) for a, b in zip(m, e)]
        return tuple(m)

    def shift_down(self, e: Exponent) -> "MultiPoly":
        return MultiPoly._raw(
            self.nvars, {tuple(a - b for a, b in zip(k, e)): c for k, c in self.terms.items()}
        )

    # -- evaluation -----------------------------------------------------
    def __call__(self, point: Sequence) -> Fraction:
        return self.eval(point)

    def eval(self, point: Sequence):
        """Evaluate at a point; exact for rational points, float for float points."""
        if len(point) != self.nvars:
            raise UsageError(f"point of length {len(point)} for {self.nvars} variables")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        if isinstance(total, int):
            return Fraction(total)
        return total

    def eval_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            term = float(c)
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with a polynomial map given one polynomial per variable."""
        if len(values) != self.nvars:
            raise UsageError("need one substitute per variable")
        target = values[0].nvars if values else 0
        out = MultiPoly.zero(target)
        powers: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = values[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- text ----------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self})"

    def to_term_list(self) -> list:
        return [[list(e), format_rational(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_term_list(cls, nvars: int, terms: Iterable) -> "MultiPoly":
        out: dict[Exponent, Fraction] = {}
        for e, c in terms:
            e = tuple(int(x) for x in e)
            out[e] = out.get(e, 0) + Fraction(c)
        return cls(nvars, out)


def variables(nvars: int) -> list[MultiPoly]:
    return [MultiPoly.variable(nvars, i) for i in range(nvars)]


def monomials_of_degree(nvars: int, d: int) -> list[Exponent]:
    """All exponent vectors of total degree d, in ascending graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.nvars != b.nvars:
        raise UsageError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown operation {op!r}")


def poly_eval(p: MultiPoly, point: Sequence[Fraction]) -> Fraction:
    return p.eval(point)


def iter_monomial_values(point: Sequence[Fraction], exps: Iterable[Exponent]) -> Iterator[Fraction]:
    for e in exps:
        v = Fraction(1)
        for x, k in zip(point, e):
            if k:
                v *= x**k
        yield v
