"""Exception hierarchy shared by all modules.

The CLI maps these onto its exit-code contract: InvalidInputError and
SingularCurveError are user errors (exit 2), NotTabulatedError marks inputs
outside the tabulated valuation ranges (exit 3) and is deliberately distinct
from invalid input.
"""


class SemistabError(Exception):
    """Base class for all library errors."""


class InvalidInputError(SemistabError):
    """Precondition violation: non-prime prime, g = 0, malformed data."""


class SingularCurveError(InvalidInputError):
    """Weierstrass data with vanishing discriminant."""


class UnsupportedPrimeError(InvalidInputError):
    """Operation defined only for p >= 5 called at p = 2 or 3."""


class NotTabulatedError(SemistabError):
    """Valuation of the family parameter falls outside the tabulated ranges.

    Never a bug: the reduction tables at 2 and 3 cover only small valuations
    and untabulated cases are refused rather than guessed.
    """


class SizeLimitError(SemistabError):
    """Cover degree or group order above the configured enumeration limits."""


class DisconnectedCoverError(InvalidInputError):
    """Generators do not act transitively on the fiber."""


class TheoremViolationError(SemistabError):
    """Internal consistency check failed; indicates a bug, never expected."""
