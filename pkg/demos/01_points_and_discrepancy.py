"""Points, local discrepancy and its norms.

Run with ``python demos/01_points_and_discrepancy.py``.
"""
from fractions import Fraction

from vdcsym import build_profile, l2_closed_form, lp_norm, lp_norm_exact, radical_inverse, sup_norm
from vdcsym.sequences import reflected_prefix, sym_prefix, vdc_prefix

# The radical inverse mirrors the binary digits of n about the binary point.
for n in (1, 6, 11):
    print(f"phi({n}) = phi(0b{n:b}) = {radical_inverse(n)}")

# Three prefixes of length 6. The symmetrised one interleaves phi(n) and 1 - phi(n),
# so it contains the value 1 and a repeated 1/2.
for name, ps in [("vdc", vdc_prefix(6)), ("reflected", reflected_prefix(6)), ("sym", sym_prefix(6))]:
    print(f"{name:>9}: " + "  ".join(str(p) for p in ps.points))

# D(t) = #{x_n < t}/N - t is a step function minus t. The profile stores it exactly.
ps = vdc_prefix(6)
prof = build_profile(ps)
print("\npieces of D for vdc N=6:")
for a, b, c in zip(prof.breakpoints, prof.breakpoints[1:], prof.levels):
    print(f"  ({a}, {b}]  D(t) = {c} - t")
print("D(5/16) =", prof(Fraction(5, 16)))

# The supremum is exact; even powers integrate exactly; other p go through floats.
print("\nL_inf =", sup_norm(prof))
print("L_2^2 =", lp_norm_exact(prof, 2), "= closed form", l2_closed_form(ps))
for p in (1, 1.5, 2, 3):
    print(f"L_{p} = {lp_norm(prof, p):.15f}")
