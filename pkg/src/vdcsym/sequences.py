"""Finite prefixes of the van der Corput sequence and its reflections."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from .dyadic import Dyadic, radical_inverse_array

__all__ = [
    "KINDS",
    "PointSet",
    "vdc_prefix",
    "reflected_prefix",
    "sym_prefix",
    "prefix",
]

KINDS = ("vdc", "reflected", "sym")


class PointSet:
    """Ordered finite point set with coordinates ``numerators / 2**bits``.

    Points are kept as an immutable int64 array on the smallest dyadic grid
    that holds all of them exactly.  ``points`` materialises them as
    :class:`~vdcsym.dyadic.Dyadic` values on demand.
    """

    def __init__(self, numerators, bits: int, kind: str = "custom"):
        num = np.array(numerators, dtype=np.int64).reshape(-1)
        if bits < 0 or bits > 62:
            raise ValueError(f"bits must lie in [0, 62], got {bits}")
        if num.size and (num.min() < 0 or num.max() > (1 << bits)):
            raise ValueError("points must lie in [0, 1]")
        # shrink to the coarsest exact grid
        if num.size:
            nz = num[num != 0]
            if nz.size:
                tz = int(np.min(nz & -nz)).bit_length() - 1
            else:
                tz = bits
            shift = min(tz, bits)
            num = num >> shift
            bits -= shift
        else:
            bits = 0
        num.setflags(write=False)
        self.numerators = num
        self.bits = bits
        self.kind = kind

    @classmethod
    def from_points(cls, points: Iterable[Union[Dyadic, Fraction, int]], kind="custom"):
        pts = [p if isinstance(p, Dyadic) else Dyadic.from_fraction(p) for p in points]
        bits = max((p.exponent for p in pts), default=0)
        if bits > 62:
            raise ValueError("points need more than 62 bits")
        return cls([p.scaled(bits) for p in pts], bits, kind)

    @property
    def N(self) -> int:
        return int(self.numerators.size)

    def __len__(self):
        return self.N

    @cached_property
    def points(self) -> tuple[Dyadic, ...]:
        return tuple(Dyadic(int(a), self.bits) for a in self.numerators)

    @cached_property
    def sorted_view(self) -> np.ndarray:
        """Stable permutation of ``range(N)`` ordering the points."""
        view = np.argsort(self.numerators, kind="stable")
        view.setflags(write=False)
        return view

    def total(self) -> Fraction:
        """Exact sum of the coordinates."""
        return Fraction(int(self.numerators.sum(dtype=object)), 1 << self.bits)

    def head(self, n: int) -> "PointSet":
        """The first ``n`` points as a new point set of the same kind."""
        if not 0 <= n <= self.N:
            raise ValueError(f"cannot take {n} of {self.N} points")
        return PointSet(self.numerators[:n], self.bits, self.kind)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.bits == other.bits and np.array_equal(self.numerators, other.numerators)

    def __hash__(self):
        return hash((self.bits, self.numerators.tobytes()))

    def __repr__(self):
        return f"PointSet(kind={self.kind!r}, N={self.N}, bits={self.bits})"


def _grid_bits(count: int) -> int:
    # phi(n) for n < count has at most bit_length(count - 1) binary digits
    return max(count - 1, 0).bit_length()


def vdc_prefix(N: int) -> PointSet:
    """``(phi(0), ..., phi(N-1))``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    bits = _grid_bits(N)
    return PointSet(radical_inverse_array(np.arange(N), bits), bits, "vdc")


def reflected_prefix(N: int) -> PointSet:
    """``(1 - phi(0), ..., 1 - phi(N-1))``; the first point is exactly 1."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    bits = _grid_bits(N)
    return PointSet((1 << bits) - radical_inverse_array(np.arange(N), bits), bits, "reflected")


def sym_prefix(N: int) -> PointSet:
    """Symmetrised prefix ``z_{2m} = phi(m)``, ``z_{2m+1} = 1 - phi(m)``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    half = (N + 1) // 2
    bits = _grid_bits(half)
    phi = radical_inverse_array(np.arange(half), bits)
    out = np.empty(N, dtype=np.int64)
    out[0::2] = phi
    out[1::2] = (1 << bits) - phi[: N // 2]
    return PointSet(out, bits, "sym")


_BUILDERS = {"vdc": vdc_prefix, "reflected": reflected_prefix, "sym": sym_prefix}


def prefix(kind: str, N: int) -> PointSet:
    try:
        return _BUILDERS[kind](N)
    except KeyError:
        raise ValueError(f"unknown sequence kind {kind!r}; expected one of {KINDS}") from None
