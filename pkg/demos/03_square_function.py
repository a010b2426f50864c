"""Square function, Parseval and the chain bound for the symmetrised sequence."""
import math

from vdcsym import build_profile, lp_norm, mu_table, parseval_l2, square_function_norm, theorem_chain_bound
from vdcsym.dyadic import ceil_log2
from vdcsym.haar import chain_bound_holds, chain_bound_rhs
from vdcsym.discrepancy import lp_norm_exact
from vdcsym.sequences import sym_prefix

print(f"{'N':>6} {'||D||_2^2 (Parseval)':>24} {'S/D p=1.5':>10} {'p=3':>7} {'p=4':>7}")
for N in (5, 64, 100, 1000, 4095):
    ps = sym_prefix(N)
    # the table only needs to reach ceil(log2 N) - 1; finer scales are summed in closed form
    table = mu_table(ps, ceil_log2(N) - 1)
    prof = build_profile(ps)
    assert parseval_l2(table) == lp_norm_exact(prof, 2)
    ratios = [square_function_norm(table, p).value / lp_norm(prof, p) for p in (1.5, 3, 4)]
    print(f"{N:>6} {float(parseval_l2(table)):>24.6e} " + " ".join(f"{r:7.4f}" for r in ratios))

print("\nchain quantity against its closed-form bound, p = 3:")
for N in (2, 16, 1000, 4096):
    t = mu_table(sym_prefix(N), ceil_log2(N) - 1 if N > 1 else 0)
    v = theorem_chain_bound(t, 3)
    print(f"  N={N:>5}: {v:.3e} <= {chain_bound_rhs(N):.3e}  holds={chain_bound_holds(v, N)}")

# At p = 2 the chain is rational and the comparison with log2 N is decided exactly.
t = mu_table(sym_prefix(777), 9)
exact = theorem_chain_bound(t, 2, exact=True)
print("\nN=777, p=2: exact chain value has a", len(str(exact.denominator)), "digit denominator;",
      "holds =", chain_bound_holds(exact, 777), f"(N^2 * value = {float(exact) * 777**2:.3f}, "
      f"N^2 * bound = {chain_bound_rhs(777) * 777**2:.3f}, log2 N = {math.log2(777):.3f})")
