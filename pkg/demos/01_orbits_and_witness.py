"""Orbits of a marked point under z^d + c, exactly and with certified
numerics.

The parameter sets attached to the marked points 0 and 1 genuinely differ,
and c = i is a finite witness: the orbit of 0 cycles exactly, while the
orbit of 1 crosses the certified escape threshold.
"""

from fractions import Fraction

from unicrit import detect_preperiodic_exact, orbit_numeric, parse_exact

print("exact orbit of 0 under z^2 - 2:")
r = detect_preperiodic_exact(0, -2, 2, keep_trace=True)
print("  ", " -> ".join(str(z) for z in r.trace[:5]))
print("   tail", r.tail, "period", r.period)

print("\nexact orbit of 0 under z^2 + i (Gaussian rational arithmetic):")
i = parse_exact("i")
r = detect_preperiodic_exact(0, i, 2, keep_trace=True)
print("  ", " -> ".join(str(z) for z in r.trace[:5]))
print("   tail", r.tail, "period", r.period)

print("\nthe same parameter seen from the marked point 1:")
r = orbit_numeric(1, 1j, 2)
print("   certified escape at step", r.step, "with |z| >", round(r.modulus, 3))

print("\na rational parameter that escapes slowly:")
r = detect_preperiodic_exact(0, Fraction(1, 3), 2)
print("   c = 1/3 escapes at orbit index", r.step)

print("\nand one the exact cap cannot settle (denominators grow forever):")
r = detect_preperiodic_exact(0, Fraction(1, 4), 2)
print("   c = 1/4:", r.status.value, "(parabolic; no finite certificate)")
