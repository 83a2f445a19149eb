"""The Green's function of a generalized Mandelbrot set, with certified
errors, and the uniformizing coordinate at infinity.

Two checks make the normalization visible: G_a(c) - log|c| -> 0 as c grows
(logarithmic capacity 1), and the degree-1 coefficient of the uniformizer
is 1.  The constant coefficient shifts by exactly a^d - b^d between marked
points, which is how the sets M_a remember a^d.
"""

import math

from unicrit import green_param, escape_certificate, uniformizer_series

print("certified escape thresholds R*:")
for c, d in ((0, 2), (32, 2), (1000, 3)):
    print(f"   c={c}, d={d}: R* = {escape_certificate(c, d):.6g}")

print("\nGreen values with certified error bounds:")
for c in (2, -3, 0.3 + 0.7j):
    g = green_param(0, c, 2)
    print(f"   G_0({c}) = {g.value:.12f} +/- {g.error:.2e}  "
          f"({g.iterations_used} iterations)")

print("\npreperiodic parameters give exact zeros:")
g = green_param(0, -1, 2)
print(f"   G_0(-1) = {g.value} +/- {g.error}")

print("\ncapacity-1 normalization: G_a(c) - log|c| shrinks as c grows")
for a in (0, 1, 2):
    gaps = []
    for expo in (4, 6, 8):
        g = green_param(a, 10.0**expo, 2, target_error=1e-10)
        gaps.append(abs(g.value - expo * math.log(10)))
    print(f"   a={a}: gaps at |c|=1e4,1e6,1e8: "
          + ", ".join(f"{x:.2e}" for x in gaps))

print("\nuniformizer Laurent coefficients on |c| = 1e4:")
fit0 = uniformizer_series(0, 2, num_coeffs=6, radius=1e4)
fit1 = uniformizer_series(1, 2, num_coeffs=6, radius=1e4)
print("   a=0:", [f"{z.real:+.6f}{z.imag:+.1e}j" for z in fit0.coefficients[:3]])
print("   a=1:", [f"{z.real:+.6f}{z.imag:+.1e}j" for z in fit1.coefficients[:3]])
print(f"   constant-term difference: "
      f"{(fit1.coefficients[1] - fit0.coefficients[1]).real:.9f}  (= 1^2 - 0^2)")
print(f"   fit residuals: {fit0.fit_residual:.2e}, {fit1.fit_residual:.2e}")
