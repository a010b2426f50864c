"""Haar coefficients of the local discrepancy.

Every coefficient is computed twice: by counting points inside dyadic
cells and by integrating the profile. The two routes never share code.
"""
from fractions import Fraction

from vdcsym import build_profile, coefficient_bound_report, mu_table
from vdcsym.haar import mu_first_vdc_formula, oracle_table
from vdcsym.sequences import sym_prefix, vdc_prefix

N = 11
for name, ps in [("vdc", vdc_prefix(N)), ("sym", sym_prefix(N))]:
    table = mu_table(ps, 4)
    print(f"{name} N={N}")
    for j in range(-1, 5):
        coeffs = table.scale(j).fractions()
        shown = ", ".join(str(c) for c in coeffs[:6]) + (" ..." if len(coeffs) > 6 else "")
        print(f"  j={j:>2}: {shown}")
    assert table.entries == oracle_table(build_profile(ps), 4).entries

# Above scale ceil(log2 N) every coefficient has modulus 2^{-2j-2}: cells that fine hold
# at most one point, which sits on a cell edge.
print("\nj=4 moduli:", {abs(v) for i, v in mu_table(vdc_prefix(N), 4).entries.items() if i.j == 4})

# The mean coefficient of the plain sequence has a closed form in terms of distances to
# the nearest integer. The symmetrised one vanishes for even N.
print("mu_{-1,0}(vdc, 11) =", mu_table(vdc_prefix(11), -1)[-1, 0], "=", mu_first_vdc_formula(11))
print("mu_{-1,0}(sym, 12) =", mu_table(sym_prefix(12), -1)[-1, 0])

# Exhaustive exact check of the coefficient bounds for one prefix.
rep = coefficient_bound_report("sym", 100, 10)
# Fine scales meet their bound with equality, so the smallest margin is exactly 0.
print(f"\nsym N=100: {rep.checked} coefficients checked, {rep.violations} violations")
assert rep.violations == 0 and rep.worst_margin == Fraction(0)
