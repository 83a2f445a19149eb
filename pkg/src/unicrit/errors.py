"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: PreconditionError -> 2,
BudgetError / UnresolvedError -> 3, usage errors -> 64.
"""


class UnicritError(Exception):
    """Base class for all package-specific errors."""


class PreconditionError(UnicritError):
    """An operation was called with inputs violating its contract."""


class DegreeCapError(UnicritError):
    """A requested exact polynomial would exceed the configured degree cap."""


class BudgetError(UnicritError):
    """An iteration/sweep budget ran out before a certified answer was reached."""


class PrecisionError(UnicritError):
    """Working precision is insufficient to certify the requested result."""


class BranchAmbiguityError(UnicritError):
    """A product factor strayed too far from 1 for principal roots to be safe."""


class UnresolvedError(UnicritError):
    """A local computation ended in an Unresolved status that the caller
    asked to be treated as fatal."""


class UnluckyPrimeError(UnicritError):
    """The modular gcd ran out of retry primes (should be practically unreachable)."""
