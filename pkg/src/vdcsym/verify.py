"""Exhaustive exact checks of the identities and bounds, grouped into suites.

Each suite takes a size parameter ``n_max`` and a scale parameter ``j_max``
and returns a :class:`VerifyReport`.  A check that fails records a witness
such as ``(kind, N, j, m)`` so the offending case can be replayed.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .discrepancy import build_profile, combine, l2_closed_form, lp_norm_exact
from .dyadic import (
    Dyadic,
    abs_reflect_sum,
    ceil_log2,
    points_in_dyadic_interval,
    radical_inverse,
    radical_inverse_array,
)
from .haar import (
    chain_bound_holds,
    coefficient_bound_report,
    dist_sum,
    max_dist_sum,
    mu,
    mu_first_vdc_formula,
    mu_oracle,
    mu_table,
    oracle_table,
    parseval_l2,
    square_function_norm_exact,
    theorem_chain_bound,
)
from .sequences import KINDS, prefix, reflected_prefix, sym_prefix, vdc_prefix

__all__ = ["VerifyReport", "SUITES", "run_suite", "run_all"]


@dataclass
class VerifyReport:
    suite: str
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond, what: str, witness=()) -> None:
        self.checks += 1
        if not cond:
            self.failures.append((what, witness))

    def check_all(self, mask, what: str, witness_of: Callable[[int], tuple]) -> None:
        """Record one check per entry of a boolean array."""
        mask = np.asarray(mask, dtype=bool)
        self.checks += int(mask.size)
        for i in np.nonzero(~mask)[0][:20].tolist():
            self.failures.append((what, witness_of(i)))
        extra = int(np.count_nonzero(~mask)) - 20
        if extra > 0:
            self.failures.append((what, ("and", extra, "more")))

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (
            f"{self.suite}: {status} checks={self.checks} "
            f"failures={len(self.failures)} seconds={self.seconds:.2f}"
        )


def _phi_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    # scaling: phi(2^j s) = phi(s) / 2^j
    for j in range(min(j_max, 10) + 1):
        for s in range(4 * n_max + 1):
            f = radical_inverse(s)
            rep.check(
                radical_inverse(s << j) == Dyadic(f.numerator, f.exponent + j),
                "scaling",
                (j, s),
            )
    # inversion: phi(2^j phi(m)) = m / 2^j
    for j in range(j_max + 1):
        for m in range(1 << j):
            rep.check(radical_inverse(radical_inverse(m).scaled(j)) == Dyadic(m, j), "inversion", (j, m))
    # membership: arithmetic characterisation against a scan
    for N in sorted({n_max, 4 * n_max}):
        bits = max(N - 1, 0).bit_length()
        num = radical_inverse_array(np.arange(N), bits)
        for j in range(min(j_max, 8) + 1):
            cell = num >> max(bits - j, 0) if bits >= j else num << (j - bits)
            for m in range(1 << j):
                scan = np.nonzero(cell == m)[0].tolist()
                rep.check(points_in_dyadic_interval(j, m, N) == scan, "membership", (N, j, m))
    # sum bound and its closed forms, for all A at once
    A_max = 16 * n_max
    bits = A_max.bit_length()
    num = radical_inverse_array(np.arange(A_max + 1), bits).astype(object)
    terms = np.abs((1 << bits) - 2 * num)
    partial = np.cumsum(terms)  # over 2^bits
    A = np.arange(A_max + 1, dtype=object)
    half = A * (1 << (bits - 1))
    rep.check_all((partial >= half) & (partial <= half + (1 << bits)), "sum bound", lambda i: ("A", i))
    closed = np.where(A % 2 == 1, (A + 1) * (1 << (bits - 1)), half + terms)
    rep.check_all(partial == closed, "sum closed form", lambda i: ("A", i))
    for a in sorted({0, 1, 4, A_max} | set(rng.integers(0, A_max + 1, 50).tolist())):
        rep.check(abs_reflect_sum(a) == Fraction(int(partial[a]), 1 << bits), "abs_reflect_sum", ("A", a))
    # pairing: |1 - 2 phi(2n)| + |1 - 2 phi(2n+1)| = 1
    n_pairs = 8 * n_max + 1
    pb = (2 * n_pairs).bit_length()
    ev = radical_inverse_array(2 * np.arange(n_pairs), pb)
    od = radical_inverse_array(2 * np.arange(n_pairs) + 1, pb)
    lhs = np.abs((1 << pb) - 2 * ev) + np.abs((1 << pb) - 2 * od)
    rep.check_all(lhs == (1 << pb), "pairing", lambda i: ("n", i))
    # injectivity on [0, 2^k)
    for k in range(j_max + 1):
        vals = radical_inverse_array(np.arange(1 << k), k)
        rep.check(np.array_equal(np.sort(vals), np.arange(1 << k)), "bijection", ("k", k))


def _mu_first_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    top = 8 * n_max
    # symmetrised prefix: running sums give mu_{-1,0} for every N at once
    z = sym_prefix(top)
    B = z.bits
    S = np.cumsum(z.numerators.astype(object))
    N = np.arange(1, top + 1, dtype=object)
    scaled = N * (1 << B) - 2 * S  # mu_{-1,0} * N * 2^{B+1}
    even = (np.arange(1, top + 1) % 2) == 0
    M = np.where(even, 0, np.arange(1, top + 1) // 2)
    phiM = radical_inverse_array(M, B).astype(object)
    expected = np.where(even, 0, (1 << B) - 2 * phiM)
    rep.check_all(scaled == expected, "sym mu_-1 exact", lambda i: ("sym", i + 1, -1, 0))
    rep.check_all(
        np.abs(scaled.astype(object)) <= (1 << B), "sym mu_-1 <= 1/(2N)", lambda i: ("sym", i + 1, -1, 0)
    )
    for n in range(1, min(n_max, 256) + 1):
        rep.check(
            mu(sym_prefix(n), (-1, 0)) == Fraction(int(scaled[n - 1]), n << (B + 1)),
            "sym mu_-1 direct",
            ("sym", n, -1, 0),
        )
    # plain sequence: closed form against the running sums
    y = vdc_prefix(top)
    S = np.cumsum(y.numerators.astype(object)).tolist()
    for n in range(1, top + 1):
        direct = Fraction(1, 2) - Fraction(S[n - 1], n << y.bits)
        rep.check(mu_first_vdc_formula(n) == direct, "vdc mu_-1 formula", ("vdc", n, -1, 0))
    # window maxima of the distance sums against brute force
    for m in range(1, min(j_max, 12) + 1):
        brute = max(dist_sum(n, m) for n in range(1 << m, 2 << m))
        rep.check(brute == max_dist_sum(m), "max_dist_sum", ("m", m))


def _decomposition_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    for N in range(1, n_max + 1):
        M = N // 2
        if N % 2 == 0:
            parts = [(Fraction(1, 2), vdc_prefix(M)), (Fraction(1, 2), reflected_prefix(M))]
        else:
            parts = [(Fraction(M + 1, N), vdc_prefix(M + 1))]
            if M:
                parts.append((Fraction(M, N), reflected_prefix(M)))
        sym = sym_prefix(N)
        profs = [(w, build_profile(ps)) for w, ps in parts]
        rep.check(combine(profs, N=N) == build_profile(sym), "profile decomposition", ("sym", N))
        # coefficient level: linearity and the triangle bound
        J = min(j_max, ceil_log2(N) + 1)
        ts = mu_table(sym, J)
        tparts = [(w, mu_table(ps, J)) for w, ps in parts]
        for j in range(-1, J + 1):
            scales = [ts.scale(j)] + [t.scale(j) for _, t in tparts]
            lcm = 1
            dens = [scales[0].denominator]
            dens += [sc.denominator * w.denominator for (w, _), sc in zip(tparts, scales[1:])]
            for d in dens:
                lcm = lcm * d // math.gcd(lcm, d)
            lhs = scales[0].numerators.astype(object) * (lcm // scales[0].denominator)
            cols = [
                sc.numerators.astype(object) * (w.numerator * lcm // (sc.denominator * w.denominator))
                for (w, _), sc in zip(tparts, scales[1:])
            ]
            rep.check_all(lhs == sum(cols), "coefficient decomposition", lambda m, j=j: ("sym", N, j, m))
            tri = sum(np.abs(c) for c in cols)
            rep.check_all(np.abs(lhs) <= tri, "triangle bound", lambda m, j=j: ("sym", N, j, m))


def _oracle_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    J = min(j_max, 9)
    for kind in KINDS:
        for N in range(1, min(n_max, 256) + 1):
            ps = prefix(kind, N)
            a = mu_table(ps, J)
            b = oracle_table(build_profile(ps), J, kind)
            for j in range(-1, J + 1):
                sa, sb = a.scale(j), b.scale(j)
                eq = sa.numerators.astype(object) * sb.denominator == sb.numerators.astype(object) * sa.denominator
                rep.check_all(eq, "counting == profile integration", lambda m, j=j: (kind, N, j, m))
    for _ in range(500):
        kind = KINDS[int(rng.integers(len(KINDS)))]
        N = int(rng.integers(1, 4 * n_max + 1))
        j = int(rng.integers(-1, j_max + 3))
        m = int(rng.integers(1 << j)) if j >= 0 else 0
        ps = prefix(kind, N)
        rep.check(mu(ps, (j, m)) == mu_oracle(build_profile(ps), (j, m)), "sampled oracle", (kind, N, j, m))


def _bounds_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    for kind in KINDS:
        for N in range(1, n_max + 1):
            J = ceil_log2(N) + 4
            r = coefficient_bound_report(kind, N, J)
            rep.checks += r.checked - 1
            rep.check(r.violations == 0, f"{kind} coefficient bounds", r.witnesses[:1] or (kind, N))


def _parseval_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    for kind in KINDS:
        for N in range(1, n_max + 1):
            ps = prefix(kind, N)
            prof = build_profile(ps)
            exact = lp_norm_exact(prof, 2)
            table = mu_table(ps, max(ceil_log2(N) - 1, 0))
            rep.check(parseval_l2(table) == exact, "parseval", (kind, N))
            rep.check(l2_closed_form(ps) == exact, "closed form L2", (kind, N))
            rep.check(square_function_norm_exact(table, 2) == exact, "square function p=2", (kind, N))


def _chain_suite(rep: VerifyReport, n_max: int, j_max: int, rng) -> None:
    for N in range(2, n_max + 1):
        table = mu_table(sym_prefix(N), ceil_log2(N) - 1)
        rep.check(chain_bound_holds(theorem_chain_bound(table, 2, exact=True), N), "chain p=2 exact", ("sym", N, 2))
        for p in (1.5, 3.0, 4.0):
            rep.check(chain_bound_holds(theorem_chain_bound(table, p), N, rtol=1e-10), "chain", ("sym", N, p))


SUITES = {
    "phi": _phi_suite,
    "mu-first": _mu_first_suite,
    "decomposition": _decomposition_suite,
    "oracle": _oracle_suite,
    "coefficient-bounds": _bounds_suite,
    "parseval": _parseval_suite,
    "chain": _chain_suite,
}


def run_suite(name: str, n_max: int = 256, j_max: int = 10, seed: int = 0) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    rep = VerifyReport(name)
    start = time.perf_counter()
    SUITES[name](rep, n_max, j_max, np.random.default_rng(seed))
    rep.seconds = time.perf_counter() - start
    return rep


def run_all(n_max: int = 256, j_max: int = 10, seed: int = 0) -> list[VerifyReport]:
    return [run_suite(name, n_max, j_max, seed) for name in SUITES]
