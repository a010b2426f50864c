"""How the scaled discrepancy behaves across dyadic windows of N.

The plain sequence grows like log N, while the symmetrised one at finite p
grows only like sqrt(log N). Window maxima make that visible. The plain
sequence approaches its limiting constant very slowly, with an offset that
decays like 1/log N.
"""
import math

from vdcsym.experiments import window_maxima

print("1/(3 log 2) =", 1 / (3 * math.log(2)), "  1/(6 log 2) =", 1 / (6 * math.log(2)))

vdc = window_maxima("vdc", [math.inf, 2.0], 4, 12)
print("\nvdc: max over [2^k, 2^{k+1}) of N L / log N")
for a, b in zip(vdc[math.inf], vdc[2.0]):
    print(f"  k={a.k:>2}  L_inf {a.value:.4f} (N={a.argmax:>5})   L_2 {b.value:.4f} (N={b.argmax:>5})")

sym = window_maxima("sym", [2.0], 4, 12)[2.0]
flat = window_maxima("vdc", [2.0], 4, 12, scaling="sqrtlog")[2.0]
print("\nN L_2 / sqrt(log N): sym stays bounded, vdc keeps climbing")
for s, v in zip(sym, flat):
    print(f"  k={s.k:>2}  sym {s.value:.4f}   vdc {v.value:.4f}")
