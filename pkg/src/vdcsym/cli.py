"""Command-line interface.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or resource error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import math
import sys
from fractions import Fraction

from . import experiments as ex
from .haar import DEFAULT_BUDGET, mu_table
from .sequences import KINDS, prefix
from .verify import SUITES, run_all, run_suite


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return f"{float(value):.17g}"


def _pick(flag, positional, name, required=True):
    value = flag if flag is not None else positional
    if value is None and required:
        raise UsageError(f"missing {name}")
    return value


def _kind(text) -> str:
    if text not in KINDS:
        raise UsageError(f"unknown kind {text!r}; expected one of {', '.join(KINDS)}")
    return text


def _int(text, name) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be an integer, got {text!r}") from None


def _p(text) -> float:
    try:
        return ex.parse_p(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _span(text: str) -> tuple[int, int, int]:
    """``a..b`` or ``a..b:stride``."""
    body, _, stride = text.partition(":")
    lo, sep, hi = body.partition("..")
    if not sep:
        raise UsageError(f"expected a range like 2..1024 or 2..1024:2, got {text!r}")
    return _int(lo, "range start"), _int(hi, "range end"), _int(stride or 1, "stride")


def _counts(text: str) -> list[int]:
    if ".." in text:
        lo, hi, step = _span(text)
        if step < 1:
            raise UsageError("stride must be positive")
        return list(range(lo, hi + 1, step))
    return [_int(t, "N") for t in text.split(",") if t.strip()]


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e}") from None
    with fh:
        yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def cmd_gen(args) -> int:
    kind = _kind(_pick(args.kind, args.kind_pos, "kind"))
    N = _int(_pick(args.n, args.n_pos, "N"), "N")
    fmt = _pick(args.mode, args.format_pos, "format", required=False) or "exact"
    if N < 1:
        raise UsageError("N must be >= 1")
    if fmt not in ("exact", "float"):
        raise UsageError("format must be exact or float")
    with _output(args.out) as fh:
        for pt in prefix(kind, N).points:
            fh.write((str(pt) if fmt == "exact" else f"{float(pt):.17g}") + "\n")
    return 0


def cmd_disc(args) -> int:
    kind = _kind(_pick(args.kind, args.kind_pos, "kind"))
    N = _int(_pick(args.n, args.n_pos, "N"), "N")
    p = _p(_pick(args.p, args.p_pos, "p"))
    if N < 1:
        raise UsageError("N must be >= 1")
    rows = ex.sweep_rows([kind], [N], [p], mode=args.mode or "exact")
    with _output(args.out) as fh:
        _write_rows(fh, rows)
    return 0


def _write_rows(fh, rows) -> None:
    w = _writer(fh)
    w.writerow(["kind", "N", "p", "value", "scaled"])
    for r in rows:
        w.writerow([r.kind, r.N, ex.format_p(r.p), _fmt(r.value), _fmt(r.scaled)])


def cmd_haar(args) -> int:
    kind = _kind(_pick(args.kind, args.kind_pos, "kind"))
    N = _int(_pick(args.n, args.n_pos, "N"), "N")
    J = _int(_pick(args.j_max, args.j_pos, "J_max"), "J_max")
    if N < 1 or J < -1:
        raise UsageError("need N >= 1 and J_max >= -1")
    try:
        table = mu_table(prefix(kind, N), J, budget=args.budget)
    except ValueError as e:
        raise UsageError(str(e)) from None
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["j", "m", "mu_num", "mu_den"])
        w.writerows(table.rows())
    return 0


def cmd_verify(args) -> int:
    suite = _pick(args.suite, None, "suite", required=False) or "all"
    n_max = _int(_pick(args.n_max, args.n_pos, "n_max", required=False) or 256, "n_max")
    j_max = args.j_max if args.j_max is not None else 10
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}, all")
    if n_max < 1 or j_max < 0:
        raise UsageError("need n_max >= 1 and j_max >= 0")
    reports = run_all(n_max, j_max, args.seed) if suite == "all" else [run_suite(suite, n_max, j_max, args.seed)]
    failed = False
    for rep in reports:
        print(rep.summary())
        for what, witness in rep.failures[:10]:
            print(f"  failed {what} at {witness}")
        failed |= not rep.ok
    return 1 if failed else 0


def cmd_sweep(args) -> int:
    kinds = [_kind(k) for k in (_pick(args.kind, args.kind_pos, "kind")).split(",")]
    ps = [_p(t) for t in (args.p or "2").split(",")]
    mode = args.mode or "float"
    if (args.n is None) == (args.windows is None):
        raise UsageError("give exactly one of --n or --windows")
    if args.n is not None:
        ns = _counts(args.n)
    else:
        lo, hi, _ = _span(args.windows)
        if lo < 0 or hi < lo:
            raise UsageError("bad window range")
        ns = sorted({int(n) for k in range(lo, hi + 1) for n in ex.window_ns(k, args.samples)})
    try:
        rows = ex.sweep_rows(kinds, ns, ps, mode=mode, scaling=args.scaling)
    except ValueError as e:
        raise UsageError(str(e)) from None
    with _output(args.out) as fh:
        _write_rows(fh, rows)
    return 0


def cmd_constants(args) -> int:
    kind = _kind(_pick(args.kind, args.kind_pos, "kind"))
    p = _p(_pick(args.p, args.p_pos, "p"))
    k_min = _int(_pick(args.k_min, args.kmin_pos, "k_min"), "k_min")
    k_max = _int(_pick(args.k_max, args.kmax_pos, "k_max"), "k_max")
    if k_min < 1 or k_max < k_min:
        raise UsageError("need 1 <= k_min <= k_max")
    result = ex.window_maxima(kind, [p], k_min, k_max, args.samples, scaling=args.scaling)[p]
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["k", "window_max_scaled", "argmax_N"])
        for row in result:
            w.writerow([row.k, _fmt(row.value), row.argmax])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdcsym",
        description="Exact discrepancy and Haar analysis of the (symmetrised) van der Corput sequence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, n=True):
        sp.add_argument("--kind", help=f"sequence kind: {', '.join(KINDS)}")
        if n:
            sp.add_argument("--n", help="number of points")
        sp.add_argument("--out", help="output file (default: stdout)")

    sp = sub.add_parser("gen", help="list the first N points")
    sp.add_argument("kind_pos", nargs="?", metavar="kind")
    sp.add_argument("n_pos", nargs="?", metavar="N")
    sp.add_argument("format_pos", nargs="?", metavar="format", choices=["exact", "float"])
    common(sp)
    sp.add_argument("--mode", choices=["exact", "float"])
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("disc", help="Lp discrepancy of one prefix as a CSV row")
    sp.add_argument("kind_pos", nargs="?", metavar="kind")
    sp.add_argument("n_pos", nargs="?", metavar="N")
    sp.add_argument("p_pos", nargs="?", metavar="p")
    common(sp)
    sp.add_argument("--p")
    sp.add_argument("--mode", choices=["exact", "float"])
    sp.set_defaults(func=cmd_disc)

    sp = sub.add_parser("haar", help="exact Haar coefficients of the local discrepancy")
    sp.add_argument("kind_pos", nargs="?", metavar="kind")
    sp.add_argument("n_pos", nargs="?", metavar="N")
    sp.add_argument("j_pos", nargs="?", metavar="J_max")
    common(sp)
    sp.add_argument("--j-max", dest="j_max")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max 2^J_max * N")
    sp.set_defaults(func=cmd_haar)

    sp = sub.add_parser("verify", help="run exact verification suites")
    sp.add_argument("suite", nargs="?", help=f"one of {', '.join(SUITES)}, all")
    sp.add_argument("n_pos", nargs="?", metavar="n_max")
    sp.add_argument("--n-max", dest="n_max")
    sp.add_argument("--j-max", dest="j_max", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="discrepancy over many N, written as CSV")
    sp.add_argument("kind_pos", nargs="?", metavar="kind")
    common(sp)
    sp.add_argument("--p", help="comma-separated exponents, e.g. 2,4,inf")
    sp.add_argument("--windows", help="dyadic windows k range, e.g. 4..10")
    sp.add_argument("--samples", type=int, default=64, help="counts sampled per window above 2^12")
    sp.add_argument("--mode", choices=["exact", "float"])
    sp.add_argument("--scaling", choices=["auto", "log", "sqrtlog"], default="auto")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("constants", help="windowed maxima of the scaled discrepancy")
    sp.add_argument("kind_pos", nargs="?", metavar="kind")
    sp.add_argument("p_pos", nargs="?", metavar="p")
    sp.add_argument("kmin_pos", nargs="?", metavar="k_min")
    sp.add_argument("kmax_pos", nargs="?", metavar="k_max")
    common(sp, n=False)
    sp.add_argument("--p")
    sp.add_argument("--k-min", dest="k_min")
    sp.add_argument("--k-max", dest="k_max")
    sp.add_argument("--samples", type=int, default=64, help="counts sampled per window above 2^12")
    sp.add_argument("--scaling", choices=["auto", "log", "sqrtlog"], default="auto")
    sp.set_defaults(func=cmd_constants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"vdcsym {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
