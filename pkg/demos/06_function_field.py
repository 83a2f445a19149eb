"""The function-field world Q(t): places are irreducible polynomials plus
the degree place, heights are exact rationals, and non-preperiodicity has
finite certificates.

For a nonconstant parameter c the map z^d + c is not conjugate to anything
over the constants, and then preperiodicity is equivalent to boundedness at
every place -- so a single valuation lock-in ends the question.
"""

from unicrit import (
    FFPlace,
    RatFunc,
    ff_height,
    ff_local_green,
    ff_ord,
    ff_preperiodic,
    ff_trivial_check,
    parse_ratfunc,
)
from unicrit.funcfield import ff_product_formula_residual

t = RatFunc.t()

print("orders at places:")
f = parse_ratfunc("t^2+t/1")
print(f"   ord_deg(t^2+t) = {ff_ord(f, FFPlace.infinite())}")
print(f"   ord_t(t^2+t)   = {ff_ord(f, FFPlace.finite([0, 1]))}")
print(f"   product formula residual for (3t+1)/(2t^3): "
      f"{ff_product_formula_residual(RatFunc.make([1, 3], [0, 0, 0, 2]))}")

print("\ntriviality test (conjugate to a constant map?):")
for c in ("5/1", "t/1", "t+1/t"):
    print(f"   c = {c}: {'trivial' if ff_trivial_check(parse_ratfunc(c)) else 'nontrivial'}")

print("\na fixed point engineered over Q(t): a = t, c = t - t^2")
r = ff_preperiodic(t, parse_ratfunc("t-t^2"), 2)
print(f"   status {r.status.value}, tail {r.tail}, period {r.period}")
print(f"   height: {ff_height(t, parse_ratfunc('t-t^2'), 2).total}")

print("\nno constant is preperiodic for z^2 + t:")
for a0 in (0, 1, -1, 2):
    r = ff_preperiodic(a0, t, 2)
    print(f"   a = {a0}: certified not preperiodic (escape at the "
          f"{r.place} place, step {r.step})")

print("\nexact local data for (a, c) = (0, t):")
g = ff_local_green(0, t, FFPlace.infinite(), 2)
print(f"   degree place: q = {g.q}")
g = ff_local_green(0, t, FFPlace.finite([0, 1]), 2)
print(f"   place t:      q = {g.q}")
rep = ff_height(0, t, 2)
print(f"   height = {rep.total} exactly")

print("\nheights double with the pole order of c:")
for c in ("t/1", "t^2/1", "t^3/1"):
    print(f"   c = {c}: height {ff_height(0, parse_ratfunc(c), 2).total}")
