"""Acceptance criteria 1-8, one test each.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from vdcsym.discrepancy import build_profile, l2_closed_form, lp_norm, lp_norm_exact
from vdcsym.dyadic import ceil_log2
from vdcsym.experiments import window_maxima
from vdcsym.haar import (
    chain_bound_holds,
    mu_table,
    parseval_l2,
    square_function_norm,
    square_function_norm_exact,
    theorem_chain_bound,
)
from vdcsym.sequences import KINDS, prefix, sym_prefix
from vdcsym.verify import run_all

LINF_TARGET = 1 / (3 * math.log(2))  # 0.48090
L2_TARGET = 1 / (6 * math.log(2))  # 0.24045
TOL = 0.02
P_LIST = (1.5, 2.0, 3.0, 4.0)


@pytest.fixture(scope="module")
def vdc_windows():
    return window_maxima("vdc", [math.inf, 2.0], 4, 14, samples=64)


@pytest.fixture(scope="module")
def boundedness_windows():
    sym = window_maxima("sym", list(P_LIST), 8, 16, samples=64)
    vdc = window_maxima("vdc", list(P_LIST), 8, 16, samples=64, scaling="sqrtlog")
    return sym, vdc


def test_1_exact_lemma_suite(criterion):
    reports = run_all(n_max=1024, j_max=12)
    bad = [r.summary() for r in reports if not r.ok]
    detail = f"suites={len(reports)} checks={sum(r.checks for r in reports)} failed={bad}"
    assert criterion("1 exact lemma suite (verify all 1024/12)", not bad, detail), detail


def test_2_parseval_with_analytic_tail(criterion):
    bad = []
    for kind in KINDS:
        for N in range(1, 513):
            ps = prefix(kind, N)
            if parseval_l2(mu_table(ps, max(ceil_log2(N) - 1, 0))) != lp_norm_exact(build_profile(ps), 2):
                bad.append((kind, N))
    first = parseval_l2(mu_table(prefix("vdc", 1), 0))
    ok = not bad and first == Fraction(1, 3)
    assert criterion("2 Parseval = ||D||_2^2 exactly, N <= 512", ok, f"mismatches={bad[:5]}"), bad[:5]


def test_3_chain_bound(criterion):
    bad = []
    for N in range(1, 4097):
        table = mu_table(sym_prefix(N), max(ceil_log2(N) - 1, 0))
        if not chain_bound_holds(theorem_chain_bound(table, 2, exact=True), N):
            bad.append((N, 2))
        for p in (1.5, 3.0, 4.0):
            if not chain_bound_holds(theorem_chain_bound(table, p), N, rtol=1e-10):
                bad.append((N, p))
    assert criterion("3 chain bound, N <= 4096, p in {1.5,2,3,4}", not bad, f"violations={bad[:5]}"), bad[:5]


def test_4_linf_constant(criterion, vdc_windows):
    rows = vdc_windows[math.inf]
    W = {r.k: r.value for r in rows}
    monotone = all(W[k + 1] >= W[k] for k in range(6, 14))
    final = W[14]
    ok = monotone and abs(final - LINF_TARGET) <= TOL
    detail = f"non-decreasing(k>=6)={monotone} W_14={final:.5f} target={LINF_TARGET:.5f}+-{TOL} " + " ".join(
        f"{k}:{v:.4f}" for k, v in W.items()
    )
    assert criterion("4 vdc L_inf window maxima -> 1/(3 log 2)", ok, detail), detail


def test_5_l2_constant(criterion, vdc_windows):
    rows = vdc_windows[2.0]
    W = {r.k: r.value for r in rows}
    final = W[14]
    ok = abs(final - L2_TARGET) <= TOL
    detail = f"W_14={final:.5f} target={L2_TARGET:.5f}+-{TOL} " + " ".join(f"{k}:{v:.4f}" for k, v in W.items())
    assert criterion("5 vdc L_2 window maxima -> 1/(6 log 2)", ok, detail), detail


def _slope(rows):
    k = np.array([r.k for r in rows], dtype=float)
    w = np.array([r.value for r in rows])
    return float(np.polyfit(k, w, 1)[0]), float(w.mean())


def test_6_theorem1_boundedness(criterion, boundedness_windows):
    sym, vdc = boundedness_windows
    problems, parts = [], []
    for p in P_LIST:
        W = [r.value for r in sym[p]]
        ratios = [b / a for a, b in zip(W, W[1:])]
        s_slope, s_mean = _slope(sym[p])
        v_slope, _ = _slope(vdc[p])
        if not all(0.8 <= r <= 1.25 for r in ratios):
            problems.append(f"p={p} ratio out of [0.8,1.25]")
        if s_slope > 0.02 * s_mean:
            problems.append(f"p={p} sym slope {s_slope:.4g} > 0.02*mean")
        # vdc at /sqrt(log N) must grow, and at least five times faster than sym
        if not (v_slope > 0 and v_slope >= 5 * s_slope):
            problems.append(f"p={p} contrast vdc slope {v_slope:.4g} vs sym {s_slope:.4g}")
        parts.append(f"p={p}: sym_slope={s_slope:.4f} vdc_slope={v_slope:.4f} ratios=[{min(ratios):.3f},{max(ratios):.3f}]")
    detail = "; ".join(parts)
    assert criterion("6 sym L_p/sqrt(log N) bounded, vdc contrast", not problems, detail), problems


def test_7_square_function_p2_identity(criterion):
    bad = []
    for kind in KINDS:
        for N in range(1, 257):
            ps = prefix(kind, N)
            table = mu_table(ps, max(ceil_log2(N) - 1, 0))
            prof = build_profile(ps)
            exact = lp_norm_exact(prof, 2)
            if square_function_norm_exact(table, 2) != exact:
                bad.append((kind, N, "exact"))
            s = square_function_norm(table, 2)
            if s.truncation_bound != 0 or abs(s.value - lp_norm(prof, 2)) > 1e-12 * lp_norm(prof, 2):
                bad.append((kind, N, "float"))
    assert criterion("7 ||S(D)||_2 = ||D||_2, N <= 256", not bad, f"mismatches={bad[:5]}"), bad[:5]


def test_8_cross_oracle_l2(criterion):
    rng = np.random.default_rng(20240601)
    bad = []
    for _ in range(200):
        kind = KINDS[int(rng.integers(len(KINDS)))]
        N = int(rng.integers(1, 1025))
        ps = prefix(kind, N)
        prof = build_profile(ps)
        exact = lp_norm_exact(prof, 2)
        if l2_closed_form(ps) != exact or abs(lp_norm(prof, 2) ** 2 - float(exact)) > 1e-12 * float(exact):
            bad.append((kind, N))
    assert criterion("8 lp_norm^2 = lp_norm_exact = closed form, 200 prefixes", not bad, f"mismatches={bad[:5]}"), bad
