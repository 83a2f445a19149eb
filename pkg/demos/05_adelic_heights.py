"""Adelic heights over Q: every place contributes a local Green's value,
non-archimedean ones as exact rational multiples of log p.

A parameter has height zero at every place exactly when the marked point is
preperiodic; the canonical height of the point itself matches the parameter
height after an exact index shift (h = d * hhat).
"""

import math
from fractions import Fraction

from unicrit import (
    adelic_height,
    canonical_height_point,
    galois_orbit_height,
    local_green_nonarch,
)

print("exact p-adic escape: a=0, c=1/3 at p=3")
r = local_green_nonarch(0, Fraction(1, 3), 3, 2)
print(f"   q = {r.q}  (local value {r.q} * log 3, status {r.status.value})")

print("\nheights of the three simultaneously-preperiodic parameters:")
for c in (0, -1, -2):
    h = adelic_height(0, c, 2)
    print(f"   h(c={c}) = {h.value} +/- {h.error}  "
          f"[{', '.join(p.status.value for p in h.places)}]")

print("\na parameter with both archimedean and 3-adic contributions:")
h = adelic_height(0, Fraction(1, 3), 2)
for p in h.places:
    if p.place.is_archimedean:
        print(f"   place inf: {p.green.value:.10f} +/- {p.green.error:.1e}")
    else:
        print(f"   place {p.place}: q = {p.q} (value {float(p.q) * math.log(p.place.p):.10f})")
print(f"   total {h.value:.10f} +/- {h.error:.1e}")

print("\nthe exact index-shift identity h = d * hhat:")
for a, c, d in ((0, 1, 2), (Fraction(1, 2), Fraction(-3, 7), 3)):
    h = adelic_height(a, c, d)
    hp = canonical_height_point(c, a, d)
    print(f"   a={a}, c={c}, d={d}: h = {h.value:.12f}, "
          f"d*hhat = {d * hp.value:.12f}")

print("\nGalois-orbit heights of whole root sets:")
h = galois_orbit_height(0, [0, 2, 3, 1], 2)  # P = c (c+1) (c+2)
print(f"   P = c(c+1)(c+2): height {h.value} (all roots preperiodic)")
h = galois_orbit_height(0, [1, 0, 1], 2)  # P = c^2 + 1
print(f"   P = c^2+1 (roots +-i): height {h.value} via exact Gaussian cycles")
h = galois_orbit_height(0, [-1, 0, 0, 1], 2)  # P = c^3 - 1
print(f"   P = c^3-1: height {h.value:.10f} +/- {h.error:.1e}")
