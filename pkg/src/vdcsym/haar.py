"""Haar coefficients of the local discrepancy and the quantities built on them.

Conventions: ``h_{j,m}`` is +1 on the left half of ``I_{j,m} = [m/2^j, (m+1)/2^j)``,
-1 on the right half and 0 elsewhere; ``h_{-1,0}`` is the indicator of
``[0, 1)``.  Coefficients are ``mu_{j,m} = int_0^1 D(t) h_{j,m}(t) dt``.

Two independent routes compute them:

* the counting formula (``mu``, ``mu_table``), which only looks at points
  strictly inside ``I_{j,m}`` and adds the volume term ``2^{-2j-2}``;
* exact integration of the piecewise-linear profile (``mu_oracle``,
  ``oracle_table``) through its antiderivative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional

import mpmath
import numpy as np

from .discrepancy import DiscrepancyProfile
from .dyadic import (
    ceil_log2,
    check_dyadic_index,
    nearest_int_distance,
    points_in_dyadic_interval,
    radical_inverse,
)
from .sequences import KINDS, PointSet

__all__ = [
    "HaarIndex",
    "ScaleCoefficients",
    "CoefficientTable",
    "ResourceLimitError",
    "haar_eval",
    "mu_volume",
    "mu_counting",
    "mu",
    "mu_oracle",
    "mu_table",
    "oracle_table",
    "mu_first_vdc_formula",
    "dist_sum",
    "max_dist_sum",
    "parseval_l2",
    "SquareFunctionNorm",
    "square_function_norm",
    "square_function_norm_exact",
    "theorem_chain_bound",
    "chain_bound_rhs",
    "chain_bound_holds",
    "BoundReport",
    "coefficient_bound_report",
]

DEFAULT_BUDGET = 1 << 28
_INT64_SAFE = 1 << 62


class ResourceLimitError(ValueError):
    """Raised when a requested table would exceed the configured work budget."""


@dataclass(frozen=True, order=True)
class HaarIndex:
    j: int
    m: int = 0

    def __post_init__(self):
        check_dyadic_index(self.j, self.m)

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        if self.j == -1:
            return Fraction(0), Fraction(1)
        return Fraction(self.m, 1 << self.j), Fraction(self.m + 1, 1 << self.j)


def _index(idx) -> HaarIndex:
    return idx if isinstance(idx, HaarIndex) else HaarIndex(*idx)


def haar_eval(idx, t) -> int:
    idx = _index(idx)
    t = Fraction(t)
    if not 0 <= t < 1:
        raise ValueError(f"t = {t} outside [0, 1)")
    if idx.j == -1:
        return 1
    s = t * (1 << (idx.j + 1))
    half = s.numerator // s.denominator
    if half == 2 * idx.m:
        return 1
    if half == 2 * idx.m + 1:
        return -1
    return 0


def mu_volume(idx) -> Fraction:
    """Coefficient of the volume part ``f(t) = t``: always ``-2^{-2j-2}``."""
    idx = _index(idx)
    if idx.j < 0:
        raise ValueError("mu_volume is defined for j >= 0")
    return Fraction(-1, 1 << (2 * idx.j + 2))


def _cell_indices(ps: PointSet, j: int, m: int) -> np.ndarray:
    """Indices of the points of ``ps`` lying in ``I_{j,m}`` (closed-open)."""
    N = ps.N
    if ps.kind == "vdc":
        return np.array(points_in_dyadic_interval(j, m, N), dtype=np.int64)
    if ps.kind == "reflected":
        # 1 - phi(n) lies in the interior of I_{j,m} iff phi(n) lies in the
        # interior of the mirrored cell; boundary points are dropped later anyway
        return np.array(points_in_dyadic_interval(j, (1 << j) - 1 - m, N), dtype=np.int64)
    if ps.kind == "sym":
        even = np.array(points_in_dyadic_interval(j, m, (N + 1) // 2), dtype=np.int64)
        odd = np.array(points_in_dyadic_interval(j, (1 << j) - 1 - m, N // 2), dtype=np.int64)
        return np.concatenate((2 * even, 2 * odd + 1))
    # callers guarantee bits > j
    shift = ps.bits - j
    lo, hi = m << shift, (m + 1) << shift
    order = ps.sorted_view
    vals = ps.numerators[order]
    a, b = np.searchsorted(vals, [lo, hi], side="left")
    return order[a:b]


def mu_counting(ps: PointSet, idx) -> Fraction:
    """Counting-part coefficient ``(2^{-j-1}/N) sum (|2m+1 - 2^{j+1} x_n| - 1)``.

    The sum runs over points in the open interior of ``I_{j,m}``.
    """
    idx = _index(idx)
    j, m = idx.j, idx.m
    if j < 0:
        raise ValueError("mu_counting is defined for j >= 0")
    if ps.N == 0 or ps.bits <= j:
        # every point is then a multiple of 2^-j, hence on a cell boundary
        return Fraction(0)
    s = ps.bits - j - 1
    X = ps.numerators[_cell_indices(ps, j, m)].astype(object)
    interior = [x for x in X.tolist() if x != (m << (s + 1)) and x != ((m + 1) << (s + 1))]
    total = sum(abs(((2 * m + 1) << s) - x) - (1 << s) for x in interior)
    return Fraction(total, ps.N << ps.bits)


def mu(ps: PointSet, idx) -> Fraction:
    """Exact Haar coefficient of the local discrepancy of ``ps``."""
    idx = _index(idx)
    if ps.N == 0:
        raise ValueError("empty point set")
    if idx.j == -1:
        return Fraction(1, 2) - ps.total() / ps.N
    return mu_counting(ps, idx) - mu_volume(idx)


def _antiderivative(profile: DiscrepancyProfile, T: np.ndarray, E: int):
    """Numerators of ``F(t) = int_0^t D`` at ``t = T / 2**E`` over ``2 N 4**E``.

    ``E`` must be at least ``profile.bits``.
    """
    N = profile.N
    big = (N.bit_length() + 2 * E + profile.num_pieces.bit_length() + 4) > 62
    dt = object if big else np.int64
    K = (profile.knots.astype(dt)) << (E - profile.bits)
    k = profile.counts.astype(dt)
    a, b = K[:-1], K[1:]
    pieces = 2 * k * (b - a) * (1 << E) - N * (b * b - a * a)
    cum = np.concatenate((np.zeros(1, dtype=dt), np.cumsum(pieces)))
    T = np.asarray(T).astype(dt)
    i = np.searchsorted(profile.knots << (E - profile.bits), np.asarray(T, dtype=np.int64), side="left") - 1
    pos = i >= 0
    out = np.zeros(T.shape, dtype=dt)
    ii = i[pos]
    a0, t0 = K[ii], T[pos]
    out[pos] = cum[ii] + 2 * k[ii] * (t0 - a0) * (1 << E) - N * (t0 * t0 - a0 * a0)
    return out


def mu_oracle(profile: DiscrepancyProfile, idx) -> Fraction:
    """``int D h_{j,m}`` by exact integration of the profile."""
    idx = _index(idx)
    j, m = idx.j, idx.m
    if j == -1:
        E = profile.bits
        F = _antiderivative(profile, np.array([1 << E]), E)
        return Fraction(int(F[0]), 2 * profile.N << (2 * E))
    E = max(profile.bits, j + 1)
    step = 1 << (E - j - 1)
    F = _antiderivative(profile, np.array([2 * m * step, (2 * m + 1) * step, (2 * m + 2) * step]), E)
    left, mid, right = (int(f) for f in F)
    return Fraction(2 * mid - left - right, 2 * profile.N << (2 * E))


@dataclass(frozen=True, eq=False)
class ScaleCoefficients:
    """All coefficients of one scale as ``numerators / denominator``."""

    j: int
    numerators: np.ndarray
    denominator: int

    def __getitem__(self, m: int) -> Fraction:
        return Fraction(int(self.numerators[m]), self.denominator)

    def __len__(self):
        return len(self.numerators)

    def fractions(self) -> list[Fraction]:
        return [Fraction(int(a), self.denominator) for a in self.numerators.tolist()]

    def _small(self) -> bool:
        a = self.numerators
        if a.dtype == object:
            return False
        top = int(np.max(np.abs(a))) if a.size else 0
        return 2 * top.bit_length() + a.size.bit_length() < 62

    def as_float(self) -> np.ndarray:
        if self._small() and self.denominator < (1 << 1000):
            return self.numerators.astype(float) / float(self.denominator)
        return np.array([a / self.denominator for a in self.numerators.tolist()], dtype=float)

    def square_sum(self) -> Fraction:
        if self._small():
            total = int(np.dot(self.numerators, self.numerators))
        else:
            total = sum(int(a) * int(a) for a in self.numerators.tolist())
        return Fraction(total, self.denominator**2)


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Haar spectrum ``mu_{j,m}`` for ``-1 <= j <= J_max``.

    ``unresolved`` counts the points whose dyadic exponent exceeds
    ``J_max + 1``; only those can lie inside cells finer than the table.
    """

    N: int
    kind: str
    J_max: int
    scales: tuple[ScaleCoefficients, ...]
    unresolved: int = 0

    @property
    def tail_exact(self) -> bool:
        """Whether finer scales are known in closed form (``|mu| = 2^{-2j-2}``)."""
        return self.kind in KINDS and self.J_max >= ceil_log2(self.N) - 1

    def scale(self, j: int) -> ScaleCoefficients:
        if not -1 <= j <= self.J_max:
            raise KeyError(f"scale {j} not in table (J_max={self.J_max})")
        return self.scales[j + 1]

    def __getitem__(self, idx) -> Fraction:
        idx = _index(idx)
        return self.scale(idx.j)[idx.m]

    def __len__(self):
        return sum(len(s) for s in self.scales)

    @cached_property
    def entries(self) -> dict[HaarIndex, Fraction]:
        return {
            HaarIndex(s.j, m): v for s in self.scales for m, v in enumerate(s.fractions())
        }

    def rows(self):
        """``(j, m, numerator, denominator)`` in lowest terms, ordered by (j, m)."""
        for s in self.scales:
            for m, v in enumerate(s.fractions()):
                yield s.j, m, v.numerator, v.denominator


def _check_budget(N: int, J_max: int, budget: int) -> None:
    if J_max < -1:
        raise ValueError("J_max must be >= -1")
    work = (1 << max(J_max, 0)) * max(N, 1)
    if work > budget:
        raise ResourceLimitError(
            f"table with N={N}, J_max={J_max} needs {work} cell-points, budget is {budget}"
        )


def _unresolved(ps: PointSet, J_max: int) -> int:
    if ps.bits <= J_max + 1:
        return 0
    mask = (1 << (ps.bits - J_max - 1)) - 1
    return int(np.count_nonzero(ps.numerators & mask))


def _counting_scale(ps: PointSet, j: int) -> ScaleCoefficients:
    N, bits = ps.N, ps.bits
    E = max(bits, 2 * j + 2)
    dt = object if (N << E).bit_length() + 1 > 62 else np.int64
    num = np.full(1 << j, N << (E - 2 * j - 2), dtype=dt)
    if bits > j:
        s = bits - j - 1
        X = ps.numerators
        X = X[X < (1 << bits)]
        cell = X >> (s + 1)
        interior = (X & ((1 << (s + 1)) - 1)) != 0
        X, cell = X[interior], cell[interior]
        terms = np.abs(((2 * cell + 1) << s) - X) - (1 << s)
        np.add.at(num, cell, terms.astype(dt) * (1 << (E - bits)))
    return ScaleCoefficients(j, num, N << E)


def mu_table(ps: PointSet, J_max: int, budget: int = DEFAULT_BUDGET) -> CoefficientTable:
    """Every coefficient up to scale ``J_max`` by the counting formula."""
    if ps.N == 0:
        raise ValueError("empty point set")
    _check_budget(ps.N, J_max, budget)
    N, bits = ps.N, ps.bits
    # mu_{-1,0} = 1/2 - (1/N) sum x_n over the denominator N 2^{bits+1}
    first = (N << bits) - 2 * int(ps.numerators.sum(dtype=object))
    scales = [ScaleCoefficients(-1, np.array([first], dtype=object), N << (bits + 1))]
    scales += [_counting_scale(ps, j) for j in range(J_max + 1)]
    return CoefficientTable(N, ps.kind, J_max, tuple(scales), _unresolved(ps, J_max))


def oracle_table(
    profile: DiscrepancyProfile, J_max: int, kind: str = "custom", budget: int = DEFAULT_BUDGET
) -> CoefficientTable:
    """Every coefficient up to ``J_max`` by integrating the profile."""
    _check_budget(profile.N, J_max, budget)
    N = profile.N
    E0 = profile.bits
    F1 = _antiderivative(profile, np.array([1 << E0]), E0)
    scales = [ScaleCoefficients(-1, np.array([int(F1[0])], dtype=object), 2 * N << (2 * E0))]
    for j in range(J_max + 1):
        E = max(profile.bits, j + 1)
        step = 1 << (E - j - 1)
        F = _antiderivative(profile, np.arange(2 ** (j + 1) + 1, dtype=np.int64) * step, E)
        num = 2 * F[1::2] - F[0:-1:2] - F[2::2]
        scales.append(ScaleCoefficients(j, num, 2 * N << (2 * E)))
    # the oracle does not see points, so the unresolved count is derived from knots
    K = profile.knots[1:-1]
    unresolved = 0
    if profile.bits > J_max + 1:
        mask = (1 << (profile.bits - J_max - 1)) - 1
        unresolved = int(np.count_nonzero(K & mask))
    return CoefficientTable(N, kind, J_max, tuple(scales), unresolved)


def dist_sum(N: int, m: int) -> Fraction:
    """``sum_{r=0}^{m-1} ||N / 2^{r+1}||``."""
    return sum((nearest_int_distance(Fraction(N, 2 << r)) for r in range(m)), Fraction(0))


def mu_first_vdc_formula(N: int) -> Fraction:
    """Closed form of ``mu_{-1,0}`` for the first ``N`` van der Corput points.

    With ``2^m <= N < 2^{m+1}`` this is ``(1 + sum_{r<m} ||N/2^{r+1}||) / (2N)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    m = N.bit_length() - 1
    return (1 + dist_sum(N, m)) / (2 * N)


def max_dist_sum(m: int) -> Fraction:
    """``max_{2^m <= N < 2^{m+1}} dist_sum(N, m) = m/3 + 1/9 - (-1)^m / (9 * 2^m)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    sign = 1 if m % 2 == 0 else -1
    return Fraction(m, 3) + Fraction(1, 9) - Fraction(sign, 9 << m)


def _analytic_tail(J: int) -> Fraction:
    # sum_{j > J} 4^j (2^{-2j-2})^2 = 2^{-2(J+1)-2} / 3
    return Fraction(1, 3 << (2 * (J + 1) + 2))


def parseval_l2(table: CoefficientTable) -> Fraction:
    """``||D||_2^2 = mu_{-1,0}^2 + sum_j 2^j sum_m mu_{j,m}^2``, tail in closed form."""
    if not table.tail_exact:
        raise ValueError(
            "Parseval with analytic tail needs a named kind and J_max >= ceil(log2 N) - 1"
        )
    total = table.scale(-1).square_sum()
    for j in range(table.J_max + 1):
        total += table.scale(j).square_sum() * (1 << j)
    return total + _analytic_tail(table.J_max)


class SquareFunctionNorm(NamedTuple):
    value: float
    truncation_bound: float


def _square_function_grid(table: CoefficientTable) -> np.ndarray:
    """``S^2`` truncated at ``J_max`` on the grid of width ``2^{-(J_max+1)}``."""
    J = table.J_max
    cells = 1 << (J + 1)
    S2 = np.zeros(cells)
    for j in range(-1, J + 1):
        vals = table.scale(j).as_float()
        weight = 4.0 ** max(0, j)
        S2 += np.repeat(weight * vals * vals, cells // len(vals))
    return S2


def square_function_norm(table: CoefficientTable, p: float) -> SquareFunctionNorm:
    """``||S(D)||_p`` with ``S(f)^2 = sum_{j,m} 4^{max(0,j)} mu_{j,m}^2 1_{I_{j,m}}``.

    For the named kinds the scales above the table contribute the constant
    ``2^{-2(J+1)-2}/3`` to ``S^2`` everywhere, so the result is exact up to
    rounding.  Otherwise the returned bound caps the error from truncation.
    """
    p = float(p)
    if not p > 1:
        raise ValueError("square_function_norm needs p > 1")
    J = table.J_max
    S2 = _square_function_grid(table)
    bound = 0.0
    if table.tail_exact:
        S2 = S2 + float(_analytic_tail(J))
    else:
        # sum_{j>J} (2^{-j-2} + (K / 2N) 2^{-j/p})
        K = table.unresolved
        bound = 2.0 ** (-J - 2) + K / (2 * table.N) * 2.0 ** (-(J + 1) / p) / (1 - 2.0 ** (-1 / p))
    width = 2.0 ** (-(J + 1))
    value = math.fsum((S2 ** (p / 2)) * width) ** (1 / p)
    return SquareFunctionNorm(value, bound)


def square_function_norm_exact(table: CoefficientTable, p: int) -> Fraction:
    """``||S(D)||_p^p`` as an exact rational for even ``p`` (named kinds only)."""
    if not isinstance(p, int) or p <= 0 or p % 2:
        raise ValueError("exact square-function norm needs an even positive integer p")
    if not table.tail_exact:
        raise ValueError("exact square-function norm needs the analytic tail")
    J = table.J_max
    cells = 1 << (J + 1)
    tail = _analytic_tail(J)
    den = tail.denominator
    for j in range(-1, J + 1):
        d2 = table.scale(j).denominator ** 2
        den = den * d2 // math.gcd(den, d2)
    S2 = np.full(cells, tail.numerator * (den // tail.denominator), dtype=object)
    for j in range(-1, J + 1):
        s = table.scale(j)
        mult = (4 ** max(0, j)) * (den // s.denominator**2)
        sq = np.array([int(a) * int(a) * mult for a in s.numerators.tolist()], dtype=object)
        S2 += np.repeat(sq, cells // len(sq))
    half = p // 2
    total = sum(int(v) ** half for v in S2.tolist())
    return Fraction(total, cells * den**half)


def theorem_chain_bound(table: CoefficientTable, p: float, exact: bool = False):
    """``sum_j 4^{max(0,j)} || sum_m mu_{j,m}^2 1_{I_{j,m}} ||_{p/2}``.

    The inner norm is ``(2^{-j} sum_m |mu_{j,m}|^p)^{2/p}``.  Scales above the
    table are summed in closed form.  With ``exact=True`` and ``p == 2`` the
    value is returned as a Fraction.
    """
    if not table.tail_exact:
        raise ValueError("chain bound needs a named kind and J_max >= ceil(log2 N) - 1")
    J = table.J_max
    if exact:
        if p != 2:
            raise ValueError("exact chain bound is only rational for p = 2")
        total = table.scale(-1).square_sum()
        for j in range(J + 1):
            total += table.scale(j).square_sum() * (1 << j)
        return total + _analytic_tail(J)
    p = float(p)
    if not p > 1:
        raise ValueError("chain bound needs p > 1")
    terms = [float(table.scale(-1)[0]) ** 2]
    for j in range(J + 1):
        a = np.abs(table.scale(j).as_float())
        inner = (math.fsum(a**p) / (1 << j)) ** (2 / p)
        terms.append(4.0**j * inner)
    terms.append(float(_analytic_tail(J)))
    return math.fsum(terms)


def chain_bound_rhs(N: int) -> float:
    """``1/(4N^2) + 4(log2 N + 1)/N^2 + 4^{-ceil(log2 N)}/12``."""
    c = ceil_log2(N)
    return 1 / (4 * N * N) + 4 * (math.log2(N) + 1) / (N * N) + 4.0 ** (-c) / 12


def chain_bound_holds(value, N: int, rtol: float = 0.0) -> bool:
    """Compare a chain value against the closed-form bound.

    Fractions are compared exactly: the only irrational part of the bound is
    ``log2 N``, bracketed by integers first and resolved at high precision only
    when the comparison falls inside that bracket.
    """
    if not isinstance(value, Fraction):
        return float(value) <= chain_bound_rhs(N) * (1 + rtol)
    c = ceil_log2(N)
    rational = Fraction(1, 4 * N * N) + Fraction(4, N * N) + Fraction(1, 12 << (2 * c))
    q = (value - rational) * N * N / 4  # need q <= log2 N
    lo, hi = N.bit_length() - 1, c
    if q <= lo:
        return True
    if q > hi:
        return False
    with mpmath.workdps(60):
        return mpmath.mpf(q.numerator) / q.denominator <= mpmath.log(N, 2)


class BoundReport(NamedTuple):
    checked: int
    violations: int
    worst_margin: Fraction
    witnesses: tuple


def _margins_vs_bound(s: ScaleCoefficients, bound: Fraction):
    """``bound - |mu|`` for each entry, as integer numerators over one denominator."""
    a = np.abs(s.numerators.astype(object))
    num = bound.numerator * s.denominator - a * bound.denominator
    return num, bound.denominator * s.denominator


def coefficient_bound_report(
    kind: str, N: int, J: int, table: Optional[CoefficientTable] = None
) -> BoundReport:
    """Exhaustive exact check of the coefficient bounds for one prefix.

    * ``j >= ceil(log2 N)``: ``|mu| = 2^{-2j-2}`` for every kind;
    * ``0 <= j < ceil(log2 N)``: ``|mu| <= 2^{-j}/N`` for vdc and reflected,
      ``|mu| <= 2^{-(j-1)}/N`` for sym;
    * ``j = -1``: sym obeys the exact two-parity formula and ``|mu| <= 1/(2N)``;
      vdc matches ``mu_first_vdc_formula`` and reflected its negative.
    """
    if kind not in KINDS:
        raise ValueError(f"bounds are stated for {KINDS}, not {kind!r}")
    if table is None:
        from .sequences import prefix

        table = mu_table(prefix(kind, N), J)
    c = ceil_log2(N)
    checked = violations = 0
    worst: Optional[Fraction] = None
    witnesses = []

    def note(margin: Fraction, where):
        nonlocal violations, worst
        if worst is None or margin < worst:
            worst = margin
        if margin < 0:
            violations += 1
            if len(witnesses) < 10:
                witnesses.append(where)

    first = table[-1, 0]
    checked += 1
    if kind == "sym":
        M = N // 2
        expected = Fraction(0) if N % 2 == 0 else Fraction(1, 2 * N) - radical_inverse(M).value / N
        if first != expected:
            note(-abs(first - expected), (kind, N, -1, 0))
        note(Fraction(1, 2 * N) - abs(first), (kind, N, -1, 0))
    else:
        expected = mu_first_vdc_formula(N) * (1 if kind == "vdc" else -1)
        note(-abs(first - expected), (kind, N, -1, 0))

    for j in range(min(J, table.J_max) + 1):
        s = table.scale(j)
        checked += len(s)
        if j >= c:
            target = Fraction(1, 1 << (2 * j + 2))
            a = np.abs(s.numerators.astype(object))
            diff = a * target.denominator - target.numerator * s.denominator
            bad = np.nonzero(diff != 0)[0]
            for m in bad.tolist():
                note(-Fraction(abs(int(diff[m])), target.denominator * s.denominator), (kind, N, j, m))
            if not bad.size:
                note(Fraction(0), (kind, N, j, 0))
        else:
            bound = Fraction(2 if kind == "sym" else 1, N << j)
            num, den = _margins_vs_bound(s, bound)
            m = int(np.argmin(num))
            lowest = int(num[m])
            note(Fraction(lowest, den), (kind, N, j, m))
            if lowest < 0:
                # record every offending entry, not only the worst
                violations += int(np.count_nonzero(num < 0)) - 1
    return BoundReport(checked, violations, worst if worst is not None else Fraction(0), tuple(witnesses))
