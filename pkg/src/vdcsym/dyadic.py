"""Exact dyadic arithmetic and the base-2 radical inverse.

Every point of the sequences handled by this package is a dyadic rational
``a / 2**k``.  Discrepancy values and Haar coefficients mix powers of two with
the point count ``N`` in their denominators, so general rationals are carried
as :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

Rational = Fraction

__all__ = [
    "Dyadic",
    "Rational",
    "radical_inverse",
    "radical_inverse_array",
    "nearest_int_distance",
    "abs_reflect_sum",
    "points_in_dyadic_interval",
    "ceil_log2",
    "check_dyadic_index",
]


@dataclass(frozen=True)
class Dyadic:
    """The number ``numerator / 2**exponent`` in lowest terms.

    The constructor reduces its arguments, so two instances compare equal
    exactly when they denote the same number.
    """

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        a, k = int(self.numerator), int(self.exponent)
        if a < 0 or k < 0:
            raise ValueError(f"Dyadic needs a >= 0 and k >= 0, got {a}/2^{k}")
        if a == 0:
            k = 0
        else:
            tz = (a & -a).bit_length() - 1
            shift = min(tz, k)
            a >>= shift
            k -= shift
        object.__setattr__(self, "numerator", a)
        object.__setattr__(self, "exponent", k)

    @classmethod
    def from_fraction(cls, x: Union[Fraction, int]) -> "Dyadic":
        x = Fraction(x)
        den = x.denominator
        if den & (den - 1):
            raise ValueError(f"{x} is not a dyadic rational")
        return cls(x.numerator, den.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def scaled(self, bits: int) -> int:
        """Numerator of this value over ``2**bits`` (requires ``bits >= exponent``)."""
        if bits < self.exponent:
            raise ValueError(f"{self} needs at least {self.exponent} bits")
        return self.numerator << (bits - self.exponent)

    def reflect(self) -> "Dyadic":
        """Return ``1 - self``."""
        return Dyadic((1 << self.exponent) - self.numerator, self.exponent)

    def _key(self, other: "Dyadic"):
        k = max(self.exponent, other.exponent)
        return self.scaled(k), other.scaled(k)

    def __lt__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b = self._key(other)
        return a < b

    def __le__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        return other < self

    def __ge__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        return other <= self

    def __float__(self):
        return self.numerator / (1 << self.exponent)

    def __str__(self):
        return f"{self.numerator}/{1 << self.exponent}"


def radical_inverse(n: int) -> Dyadic:
    """Base-2 radical inverse: the binary digits of ``n`` mirrored behind the point.

    >>> radical_inverse(6)
    Dyadic(numerator=3, exponent=3)
    """
    if n < 0:
        raise ValueError("radical inverse is defined for n >= 0")
    if n == 0:
        return Dyadic(0, 0)
    bits = n.bit_length()
    # the leading bit of n becomes the last digit, so the result is already odd
    return Dyadic(int(bin(n)[:1:-1], 2), bits)


def radical_inverse_array(n, bits: int) -> np.ndarray:
    """Vectorised radical inverse: numerators of ``phi(n)`` over ``2**bits``.

    Every entry of ``n`` must be below ``2**bits``.
    """
    n = np.asarray(n, dtype=np.int64)
    if bits > 62:
        raise ValueError("bits must be <= 62 for int64 numerators")
    if n.size and (n.min() < 0 or n.max() >> bits):
        raise ValueError(f"indices must lie in [0, 2^{bits})")
    out = np.zeros_like(n)
    for i in range(bits):
        out = (out << 1) | ((n >> i) & 1)
    return out


def ceil_log2(n: int) -> int:
    """``ceil(log2(n))`` for ``n >= 1``, by integer bit length."""
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


def nearest_int_distance(x) -> Fraction:
    """Distance ``||x||`` from ``x`` to the nearest integer."""
    x = Fraction(x)
    frac = x - (x.numerator // x.denominator)
    return min(frac, 1 - frac)


def abs_reflect_sum(A: int) -> Fraction:
    """Exact value of ``sum_{s=0}^{A} |1 - 2 phi(s)|``."""
    if A < 0:
        raise ValueError("A must be nonnegative")
    # sum over a common denominator 2**bits; the summands are |2**bits - 2*num|
    bits = max(A.bit_length(), 1)
    num = radical_inverse_array(np.arange(A + 1), bits)
    total = int(np.abs((1 << bits) - 2 * num).sum())
    return Fraction(total, 1 << bits)


def check_dyadic_index(j: int, m: int) -> None:
    if j < -1:
        raise ValueError(f"scale j must be >= -1, got {j}")
    hi = 1 if j == -1 else 1 << j
    if not 0 <= m < hi:
        raise ValueError(f"position m={m} outside D_{j} = [0, {hi})")


def points_in_dyadic_interval(j: int, m: int, N: int) -> list[int]:
    """All ``n < N`` with ``phi(n)`` in ``[m/2^j, (m+1)/2^j)``.

    Uses the arithmetic characterisation ``n = 2^j phi(m) + 2^j s`` rather
    than scanning; ``2^j phi(m)`` is an integer because ``m < 2^j``.
    """
    if j < 0:
        raise ValueError("points_in_dyadic_interval needs j >= 0")
    check_dyadic_index(j, m)
    start = radical_inverse(m).scaled(j) if m else 0
    return list(range(start, max(N, 0), 1 << j))
