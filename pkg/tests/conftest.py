import time

import pytest

from unicrit.persolve import difference_poly, solve_roots


@pytest.fixture(scope="session")
def roots_10_1():
    """Roots of G_10 - G_1 for a=0, d=2 (degree 512); shared because the
    certified solve is the most expensive computation in the suite."""
    return solve_roots(difference_poly(0, 2, 10, 1), precision_bits=128)


@pytest.fixture(scope="session")
def roots_9_1():
    return solve_roots(difference_poly(0, 2, 9, 1), precision_bits=128)


@pytest.fixture(scope="session")
def conj_report_10():
    """Common preperiodic parameters of 0 and 1 at the Lmax=10 budget,
    with the wall time of the search attached."""
    from unicrit.conjsearch import common_preperiodic_params

    start = time.monotonic()
    report = common_preperiodic_params(0, 1, 2, 10)
    elapsed = time.monotonic() - start
    return report, elapsed
