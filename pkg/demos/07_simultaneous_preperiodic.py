"""Where are 0 and 1 both preperiodic for z^2 + c?

Common parameters are common roots of difference polynomials from the two
sides.  Divisibility nesting reduces every (l, m) pair to the top level, so
a budget of Lmax covers all pairs m < l <= Lmax with a grid of modular
gcds.  At every budget tried, the answer stays {0, -1, -2}.

The full desk-scale run (`Lmax = 10`, degree 512) is a few seconds of gcd
work; run it here or via the CLI:

    unicrit conj-search --a 0 --b 1 --d 2 --lmax 10 --out report.json
"""

import json
import time
from pathlib import Path

from unicrit import common_preperiodic_params, verify_common

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

for lmax in (3, 5, 7):
    start = time.monotonic()
    rep = common_preperiodic_params(0, 1, 2, lmax)
    dt = time.monotonic() - start
    roots = ", ".join(str(r) for r in rep.rational_roots)
    print(f"Lmax = {lmax}: common rational roots {{{roots}}}  "
          f"({len(rep.pairs_covered)} pairs, {dt:.1f}s)")
    for f in rep.factors:
        print(f"   factor {list(f.coeffs)} from a-side {f.a_pair}, "
              f"b-side {f.b_pair}")

rep = common_preperiodic_params(0, 1, 2, 7)
ver = verify_common(rep)
print(f"\nindependent re-verification: "
      f"{'all roots and factors check out' if ver.all_passed else 'FAILED'}")

(out / "common_0_1.json").write_text(json.dumps(rep.to_json(), indent=2))
print(f"wrote {out / 'common_0_1.json'}")

print("\nthe orbits behind the three parameters:")
from unicrit import detect_preperiodic_exact  # noqa: E402

for c in (0, -1, -2):
    ra = detect_preperiodic_exact(0, c, 2)
    rb = detect_preperiodic_exact(1, c, 2)
    print(f"   c = {c}: orbit of 0 has (tail, period) = ({ra.tail}, {ra.period}); "
          f"orbit of 1 has ({rb.tail}, {rb.period})")
