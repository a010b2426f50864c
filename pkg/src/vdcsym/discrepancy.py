"""Local discrepancy as an exact piecewise-linear function, and its norms.

For points ``x_0, ..., x_{N-1}`` in ``[0, 1]`` the local discrepancy

    D(t) = #{n : x_n < t} / N - t

equals ``c_i - t`` on each piece ``(t_i, t_{i+1}]`` between consecutive
distinct point values, where ``c_i = counts[i] / N``.  Knots and counts are
stored as integers over the grid ``2**bits`` of the generating point set, so
every integral below is a finite sum of exact polynomial terms.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .sequences import PointSet

__all__ = [
    "DiscrepancyProfile",
    "build_profile",
    "evaluate",
    "sup_norm",
    "lp_norm",
    "lp_norm_exact",
    "l2_closed_form",
    "combine",
    "profiles_match",
]


class DiscrepancyProfile:
    """Exact representation of ``t -> D_N(t)`` on ``[0, 1]``."""

    def __init__(self, N: int, bits: int, knots, counts):
        knots = np.asarray(knots, dtype=np.int64)
        counts = np.asarray(counts, dtype=np.int64)
        if N < 1:
            raise ValueError("a profile needs N >= 1")
        if knots.size != counts.size + 1 or knots[0] != 0 or knots[-1] != 1 << bits:
            raise ValueError("knots must run from 0 to 2**bits with one count per piece")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        if np.any(np.diff(counts) < 0) or counts[0] < 0 or counts[-1] > N:
            raise ValueError("counts must be non-decreasing within [0, N]")
        knots.setflags(write=False)
        counts.setflags(write=False)
        self.N = int(N)
        self.bits = int(bits)
        self.knots = knots
        self.counts = counts

    @property
    def num_pieces(self) -> int:
        return int(self.counts.size)

    @cached_property
    def breakpoints(self) -> tuple[Fraction, ...]:
        den = 1 << self.bits
        return tuple(Fraction(int(k), den) for k in self.knots)

    @cached_property
    def levels(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(c), self.N) for c in self.counts)

    def endpoint_numerators(self):
        """Integer numerators of ``D`` at the left (limit) and right end of each piece.

        Both are over the common denominator ``N * 2**bits``.
        """
        scale = 1 << self.bits
        c = self.counts.astype(object) if self._big else self.counts
        kn = self.knots.astype(object) if self._big else self.knots
        left = c * scale - kn[:-1] * self.N
        right = c * scale - kn[1:] * self.N
        return left, right

    @property
    def _big(self) -> bool:
        return self.N.bit_length() + self.bits + 1 > 62

    def __call__(self, t) -> Fraction:
        return evaluate(self, t)

    def __eq__(self, other):
        if not isinstance(other, DiscrepancyProfile):
            return NotImplemented
        return (
            self.N == other.N
            and self.bits == other.bits
            and np.array_equal(self.knots, other.knots)
            and np.array_equal(self.counts, other.counts)
        )

    def __repr__(self):
        return f"DiscrepancyProfile(N={self.N}, pieces={self.num_pieces}, bits={self.bits})"


def build_profile(ps: PointSet) -> DiscrepancyProfile:
    if ps.N < 1:
        raise ValueError("cannot build the local discrepancy of an empty point set")
    full = 1 << ps.bits
    vals = np.sort(ps.numerators)
    inner = np.unique(vals[(vals > 0) & (vals < full)])
    knots = np.concatenate(([0], inner, [full]))
    # on (t_i, t_{i+1}] the count of points < t is the count of points <= t_i
    counts = np.searchsorted(vals, knots[:-1], side="right")
    return DiscrepancyProfile(ps.N, ps.bits, knots, counts)


def evaluate(profile: DiscrepancyProfile, t) -> Fraction:
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t = {t} outside [0, 1]")
    if t == 0:
        return Fraction(0)
    i = bisect_left(profile.knots.tolist(), t * (1 << profile.bits)) - 1
    return Fraction(int(profile.counts[i]), profile.N) - t


def sup_norm(profile: DiscrepancyProfile) -> Fraction:
    """``sup_t |D(t)|``, including one-sided limits at the knots."""
    left, right = profile.endpoint_numerators()
    top = max(int(np.max(np.abs(left))), int(np.max(np.abs(right))))
    return Fraction(top, profile.N << profile.bits)


def lp_norm_exact(profile: DiscrepancyProfile, p: int) -> Fraction:
    """``int_0^1 D(t)^p dt`` for even integer ``p``; this is the p-th power of the norm."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p <= 0 or p % 2:
        raise ValueError(f"lp_norm_exact needs an even positive integer p, got {p!r}")
    p = int(p)
    left, right = profile.endpoint_numerators()
    q = p + 1
    total = sum(int(a) ** q - int(b) ** q for a, b in zip(left.tolist(), right.tolist()))
    return Fraction(total, q * (profile.N << profile.bits) ** q)


def _piece_powers(u, v, w, p):
    """``int |s|^p ds`` over ``[v, u]`` for each piece, with ``u - v = w > 0``."""
    q = p + 1.0
    au, av = np.abs(u), np.abs(v)
    same = (v >= 0) | (u <= 0)
    big = np.maximum(au, av)
    out = np.empty_like(u)
    # opposite signs: both parts add, no cancellation
    out[~same] = (au[~same] ** q + av[~same] ** q) / q
    # same sign: big^q - small^q = -big^q * expm1(q * log1p(-w / big))
    b, ww = big[same], w[same]
    with np.errstate(divide="ignore"):
        out[same] = -(b ** q) * np.expm1(q * np.log1p(-ww / b)) / q
    return out


def lp_norm(profile: DiscrepancyProfile, p: float) -> float:
    """``||D||_p`` in floating point, via closed-form integrals on each piece."""
    p = float(p)
    if math.isnan(p) or p < 1:
        raise ValueError(f"lp_norm needs p >= 1, got {p}")
    if math.isinf(p):
        return float(sup_norm(profile))
    left, right = profile.endpoint_numerators()
    den = float(profile.N << profile.bits)
    u = np.asarray(left, dtype=float) / den
    v = np.asarray(right, dtype=float) / den
    w = np.diff(profile.knots).astype(float) / float(1 << profile.bits)
    total = math.fsum(_piece_powers(u, v, w, p))
    return total ** (1.0 / p)


def l2_closed_form(ps: PointSet) -> Fraction:
    """``int_0^1 D(t)^2 dt`` computed from the points alone.

    Expanding the square and integrating term by term,

        (1/N^2) sum_{i,k} (1 - max(x_i, x_k)) - (1/N) sum_n (1 - x_n^2) + 1/3
          = 1/3 - S1 / N^2 + S2 / N,

    with ``S2 = sum_n x_n^2`` and, for the sorted points,
    ``S1 = sum_{i,k} max(x_i, x_k) = sum_r (2r + 1) x_(r)``.
    """
    if ps.N < 1:
        raise ValueError("empty point set")
    N, bits = ps.N, ps.bits
    xs = sorted(int(a) for a in ps.numerators)
    s1 = sum((2 * r + 1) * x for r, x in enumerate(xs))
    s2 = sum(x * x for x in xs)
    return Fraction(1, 3) - Fraction(s1, N * N << bits) + Fraction(s2, N << (2 * bits))


def profiles_match(
    target: DiscrepancyProfile,
    terms: Sequence[tuple[Fraction, DiscrepancyProfile]],
) -> bool:
    """Whether ``target(t) == sum_i w_i * profile_i(t)`` for every ``t``.

    Each side is piecewise linear with slope ``-sum(w)``, so the identity holds
    iff the weights sum to 1 and the step parts agree on the common refinement
    of all knot sets.
    """
    weights = [Fraction(w) for w, _ in terms]
    if sum(weights) != 1:
        return False
    profiles = [target] + [pr for _, pr in terms]
    bits = max(pr.bits for pr in profiles)
    grid = np.unique(np.concatenate([pr.knots << (bits - pr.bits) for pr in profiles]))
    left = grid[:-1]

    def steps(pr):
        kn = pr.knots << (bits - pr.bits)
        return pr.counts[np.searchsorted(kn, left, side="right") - 1].astype(object)

    # compare target.counts / N against sum w_i * counts_i / N_i over one denominator
    coeffs = [Fraction(1, target.N)] + [w / pr.N for w, (_, pr) in zip(weights, terms)]
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    lhs = steps(target) * int(coeffs[0] * lcm)
    rhs = sum(steps(pr) * int(c * lcm) for c, (_, pr) in zip(coeffs[1:], terms))
    return bool(np.all(lhs == rhs))


def combine(
    terms: Sequence[tuple[Fraction, DiscrepancyProfile]],
    N: int | None = None,
) -> DiscrepancyProfile:
    """The pointwise combination ``sum_i w_i * profile_i`` as a canonical profile.

    The weights must sum to 1 so that the volume parts add up to ``t``.  The
    step part is expressed as counts over ``N``; by default the smallest
    denominator that works.  Knots where the level does not change are
    dropped and the grid is shrunk to its coarsest exact form.
    """
    weights = [Fraction(w) for w, _ in terms]
    if not terms or sum(weights) != 1:
        raise ValueError("combination weights must sum to 1")
    profiles = [pr for _, pr in terms]
    bits = max(pr.bits for pr in profiles)
    grid = np.unique(np.concatenate([pr.knots << (bits - pr.bits) for pr in profiles]))
    coeffs = [w / pr.N for w, pr in zip(weights, profiles)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    total = np.zeros(grid.size - 1, dtype=object)
    for c, pr in zip(coeffs, profiles):
        kn = pr.knots << (bits - pr.bits)
        steps = pr.counts[np.searchsorted(kn, grid[:-1], side="right") - 1].astype(object)
        total = total + steps * int(c * den)
    if N is None:
        g = den
        for v in total.tolist():
            g = math.gcd(g, int(v))
        N = den // g
    if any(int(v) * N % den for v in total.tolist()):
        raise ValueError(f"the combined levels are not multiples of 1/{N}")
    counts = np.array([int(v) * N // den for v in total.tolist()], dtype=np.int64)
    keep = np.concatenate(([True], counts[1:] != counts[:-1]))
    knots = np.concatenate((grid[:-1][keep], grid[-1:]))
    counts = counts[keep]
    while bits > 0 and not np.any(knots & 1):
        knots = knots >> 1
        bits -= 1
    return DiscrepancyProfile(N, bits, knots, counts)
