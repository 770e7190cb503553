"""Square matrices with MultiPoly entries (End(V)-valued polynomial maps)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import MultiPoly, UsageError


class PolyMatrix:
    __slots__ = ("dim", "nvars", "entries", "declared_degree")

    def __init__(self, entries: Sequence[Sequence[MultiPoly]], declared_degree: int | None = None,
                 *, nvars: int | None = None):
        rows = [list(r) for r in entries]
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise UsageError("PolyMatrix must be square")
        if nvars is None:
            if dim == 0:
                raise UsageError("nvars required for an empty matrix")
            nvars = rows[0][0].nvars
        for r in rows:
            for p in r:
                if p.nvars != nvars:
                    raise UsageError("entries live in different polynomial rings")
        if declared_degree is not None:
            for r in rows:
                for p in r:
                    if p and not p.is_homogeneous(declared_degree):
                        raise UsageError(
                            f"entry {p} is not homogeneous of degree {declared_degree}"
                        )
        self.dim = dim
        self.nvars = nvars
        self.entries = rows
        self.declared_degree = declared_degree

    @classmethod
    def zeros(cls, dim: int, nvars: int, declared_degree: int | None = None) -> "PolyMatrix":
        z = MultiPoly.zero(nvars)
        return cls([[z] * dim for _ in range(dim)], declared_degree, nvars=nvars)

    @classmethod
    def constant(cls, m: Sequence[Sequence[Fraction]], nvars: int) -> "PolyMatrix":
        return cls([[MultiPoly.constant(nvars, x) for x in row] for row in m], nvars=nvars)

    def __getitem__(self, idx: tuple[int, int]) -> MultiPoly:
        i, j = idx
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(not p for r in self.entries for p in r)

    def first_nonzero(self) -> tuple[int, int, MultiPoly] | None:
        for i, r in enumerate(self.entries):
            for j, p in enumerate(r):
                if p:
                    return i, j, p
        return None

    def _combine_degree(self, other: "PolyMatrix") -> int | None:
        if self.declared_degree == other.declared_degree:
            return self.declared_degree
        if self.is_zero():
            return other.declared_degree
        if other.is_zero():
            return self.declared_degree
        return None

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self._combine_degree(other), nvars=self.nvars,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self._combine_degree(other), nvars=self.nvars,
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-a for a in r] for r in self.entries], self.declared_degree, nvars=self.nvars)

    def scale(self, c: MultiPoly | Fraction | int) -> "PolyMatrix":
        deg = None
        if isinstance(c, MultiPoly):
            hd = c.homogeneous_degree()
            if self.declared_degree is not None and hd is not None:
                deg = self.declared_degree + hd
        elif self.declared_degree is not None:
            deg = self.declared_degree
        if (isinstance(c, MultiPoly) and not c) or (not isinstance(c, MultiPoly) and c == 0):
            return PolyMatrix.zeros(self.dim, self.nvars)
        return PolyMatrix([[a * c for a in r] for r in self.entries], deg, nvars=self.nvars)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = MultiPoly.zero(self.nvars)
                for m in range(n):
                    a = self.entries[i][m]
                    if a:
                        b = other.entries[m][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        deg = None
        if self.declared_degree is not None and other.declared_degree is not None:
            deg = self.declared_degree + other.declared_degree
        return PolyMatrix(out, deg, nvars=self.nvars)

    def commutator(self, other: "PolyMatrix") -> "PolyMatrix":
        return (self @ other) - (other @ self)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(r) for r in zip(*self.entries)], self.declared_degree, nvars=self.nvars)

    def trace(self) -> MultiPoly:
        acc = MultiPoly.zero(self.nvars)
        for i in range(self.dim):
            acc = acc + self.entries[i][i]
        return acc

    def apply(self, vec: Sequence[MultiPoly]) -> list[MultiPoly]:
        out = []
        for r in self.entries:
            acc = MultiPoly.zero(self.nvars)
            for a, v in zip(r, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def eval(self, point: Sequence[Fraction]) -> list[list[Fraction]]:
        return [[p.eval(point) for p in r] for r in self.entries]

    def eval_float(self, point: Sequence[float]) -> np.ndarray:
        return np.array([[p.eval_float(point) for p in r] for r in self.entries], dtype=float)

    def flatten(self) -> list[MultiPoly]:
        return [p for r in self.entries for p in r]

    def homogeneity_violations(self) -> list[tuple[int, int]]:
        if self.declared_degree is None:
            return []
        return [
            (i, j)
            for i, r in enumerate(self.entries)
            for j, p in enumerate(r)
            if p and not p.is_homogeneous(self.declared_degree)
        ]

    def _check(self, other: "PolyMatrix") -> None:
        if self.dim != other.dim or self.nvars != other.nvars:
            raise UsageError("PolyMatrix shape or ring mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def __repr__(self) -> str:
        return f"PolyMatrix(dim={self.dim}, degree={self.declared_degree})"

    def to_entry_list(self) -> list:
        return [
            [i + 1, j + 1, p.to_term_list()]
            for i, r in enumerate(self.entries)
            for j, p in enumerate(r)
            if p
        ]
