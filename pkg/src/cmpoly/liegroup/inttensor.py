"""Dense exact tensors: an integer array over one shared denominator.

Arrays are int64 whenever an a-priori magnitude bound proves that no
intermediate can overflow, and Python-int object arrays otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

_INT64_SAFE = 2**62


def _dtype_for(bound: int):
    return np.int64 if bound < _INT64_SAFE else object


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


class IntTensor:
    __slots__ = ("num", "den", "_max")

    def __init__(self, num: np.ndarray, den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.num = num
        self.den = int(den)
        self._max = None

    @classmethod
    def from_fractions(cls, arr) -> "IntTensor":
        a = np.asarray(arr, dtype=object)
        den = reduce(lcm, (Fraction(v).denominator for v in a.flat), 1)
        num = np.empty(a.shape, dtype=object)
        for idx, v in np.ndenumerate(a):
            v = Fraction(v)
            num[idx] = v.numerator * (den // v.denominator)
        return cls(num, den).normalized()

    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape

    @property
    def ndim(self) -> int:
        return self.num.ndim

    def max_abs(self) -> int:
        if self._max is None:
            self._max = _max_abs(self.num)
        return self._max

    def is_zero(self) -> bool:
        return self.max_abs() == 0

    def normalized(self) -> "IntTensor":
        """Divide out the common gcd and pick the narrowest safe dtype."""
        num = self.num
        if num.dtype == object:
            g = self.den
            for v in num.flat:
                if g == 1:
                    break
                g = gcd(g, int(v))
        else:
            g = gcd(int(np.gcd.reduce(num, axis=None)) if num.size else 0, self.den)
        if g > 1:
            num = num // g
        out = IntTensor(num, self.den // g)
        m = out.max_abs()
        dt = _dtype_for(m)
        if dt is np.int64 and out.num.dtype != np.int64:
            out.num = out.num.astype(np.int64)
        elif dt is object and out.num.dtype != object:
            out.num = out.num.astype(object)
        out._max = m
        return out

    def as_dtype(self, dtype) -> np.ndarray:
        return self.num if self.num.dtype == dtype else self.num.astype(dtype)

    def __getitem__(self, idx) -> Fraction:
        return Fraction(int(self.num[idx]), self.den)

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for idx, v in np.ndenumerate(self.num):
            out[idx] = Fraction(int(v), self.den)
        return out

    def to_float(self) -> np.ndarray:
        if self.num.dtype == object:
            return np.array([float(Fraction(int(v), self.den)) for v in self.num.flat]).reshape(self.shape)
        return self.num.astype(float) / self.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntTensor):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a = self.num.astype(object) * other.den
        b = other.num.astype(object) * self.den
        return bool(np.all(a == b))

    __hash__ = None


def working_dtype(*bounds: int):
    return _dtype_for(max(bounds) if bounds else 0)
