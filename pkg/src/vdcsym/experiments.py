"""Discrepancy sweeps over N and windowed maxima of the scaled statistics.

The scaled statistic of a prefix of length ``N`` is ``N * L / log N`` or
``N * L / sqrt(log N)`` (natural logarithm).  Over a dyadic window
``[2^k, 2^{k+1})`` its maximum tracks the leading growth constant.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .discrepancy import build_profile, lp_norm, lp_norm_exact, sup_norm
from .sequences import PointSet, prefix

__all__ = [
    "EXACT_N_LIMIT",
    "EXHAUSTIVE_WINDOW_LIMIT",
    "parse_p",
    "format_p",
    "norm_value",
    "scaled_value",
    "SweepRow",
    "sweep_rows",
    "window_ns",
    "WindowMax",
    "window_maxima",
]

EXACT_N_LIMIT = 1 << 20
EXHAUSTIVE_WINDOW_LIMIT = 12

Number = Union[Fraction, float]


def parse_p(text) -> float:
    """Parse an exponent: a real ``>= 1`` or ``inf``."""
    if isinstance(text, (int, float)):
        p = float(text)
    else:
        t = str(text).strip().lower()
        p = math.inf if t in ("inf", "infinity", "oo") else float(t)
    if math.isnan(p) or p < 1:
        raise ValueError(f"p must be >= 1 or inf, got {text!r}")
    return p


def format_p(p: float) -> str:
    if math.isinf(p):
        return "inf"
    return str(int(p)) if p == int(p) else repr(p)


def norm_value(ps: PointSet, p: float, mode: str = "float") -> Number:
    """``L_p`` discrepancy of ``ps``.

    In exact mode ``p = inf`` gives a Fraction; even integer ``p`` is integrated
    exactly and rooted once at the end.
    """
    prof = build_profile(ps)
    if math.isinf(p):
        v = sup_norm(prof)
        return v if mode == "exact" else float(v)
    if mode == "exact" and p == int(p) and int(p) % 2 == 0:
        return float(lp_norm_exact(prof, int(p))) ** (1.0 / p)
    return lp_norm(prof, p)


def _scaling_for(kind: str, p: float, scaling: str) -> str:
    if scaling != "auto":
        return scaling
    return "sqrtlog" if kind == "sym" and not math.isinf(p) else "log"


def scaled_value(value: Number, N: int, p: float, kind: str, scaling: str = "auto") -> Optional[float]:
    """``N * value / log N`` or ``N * value / sqrt(log N)``; None for ``N = 1``.

    ``scaling='auto'`` picks the square-root form for the symmetrised
    sequence at finite ``p`` and the plain logarithm otherwise.
    """
    if N < 2:
        return None
    log = math.log(N)
    how = _scaling_for(kind, p, scaling)
    if how == "log":
        return N * float(value) / log
    if how == "sqrtlog":
        return N * float(value) / math.sqrt(log)
    raise ValueError(f"unknown scaling {scaling!r}")


class SweepRow(NamedTuple):
    kind: str
    N: int
    p: float
    value: Number
    scaled: Optional[float]


def sweep_rows(
    kinds: Sequence[str],
    ns: Iterable[int],
    ps: Sequence[float],
    mode: str = "float",
    scaling: str = "auto",
) -> list[SweepRow]:
    """Rows ordered by kind (as given), then N ascending, then p ascending."""
    ns = sorted(set(int(n) for n in ns))
    if ns and ns[0] < 1:
        raise ValueError("every N must be >= 1")
    if mode == "exact" and ns and ns[-1] > EXACT_N_LIMIT:
        raise ValueError(f"exact mode is limited to N <= 2^20, got N = {ns[-1]}")
    ps = sorted(set(ps))
    rows = []
    for kind in kinds:
        for N in ns:
            pts = prefix(kind, N)
            for p in ps:
                v = norm_value(pts, p, mode)
                rows.append(SweepRow(kind, N, p, v, scaled_value(v, N, p, kind, scaling)))
    return rows


def window_ns(k: int, samples: int, exhaustive_limit: int = EXHAUSTIVE_WINDOW_LIMIT) -> np.ndarray:
    """Counts examined in the window ``[2^k, 2^{k+1})``.

    Every count when ``k <= exhaustive_limit``, otherwise ``samples`` evenly
    spaced counts plus both window ends.
    """
    lo, hi = 1 << k, (2 << k) - 1
    if k <= exhaustive_limit:
        return np.arange(lo, hi + 1)
    grid = np.linspace(lo, hi, max(samples, 0) + 2)
    return np.unique(np.rint(grid).astype(np.int64))


class WindowMax(NamedTuple):
    k: int
    value: float
    argmax: int


def window_maxima(
    kind: str,
    p_list: Sequence[float],
    k_min: int,
    k_max: int,
    samples: int = 64,
    scaling: str = "auto",
    exhaustive_limit: int = EXHAUSTIVE_WINDOW_LIMIT,
) -> dict[float, list[WindowMax]]:
    """Per-window maximum of the scaled statistic, for several ``p`` at once."""
    if k_min < 1 or k_max < k_min:
        raise ValueError("need 1 <= k_min <= k_max")
    out: dict[float, list[WindowMax]] = {p: [] for p in p_list}
    for k in range(k_min, k_max + 1):
        best = {p: (-math.inf, 0) for p in p_list}
        for N in window_ns(k, samples, exhaustive_limit).tolist():
            prof = build_profile(prefix(kind, N))
            for p in p_list:
                v = float(sup_norm(prof)) if math.isinf(p) else lp_norm(prof, p)
                s = scaled_value(v, N, p, kind, scaling)
                if s > best[p][0]:
                    best[p] = (s, N)
        for p in p_list:
            out[p].append(WindowMax(k, *best[p]))
    return out
