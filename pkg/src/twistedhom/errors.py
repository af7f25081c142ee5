"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input problems exit 1, size and budget
problems exit 2.
"""


class TwistedHomError(Exception):
    """Base class for all errors raised by the package."""


class InvalidInputError(TwistedHomError, ValueError):
    """Malformed or inconsistent input (bad file, mismatched moduli, ...)."""


class InvalidComplexError(InvalidInputError):
    """A chain complex whose consecutive boundaries do not compose to zero."""


class PreconditionError(InvalidInputError):
    """An operation was called outside its domain (e.g. 1 - g with g = 1)."""


class BudgetExceededError(TwistedHomError):
    """Coset enumeration did not close within its budget.

    The group is possibly infinite or too large; this is distinct from a
    malformed presentation.
    """


class SizeLimitError(TwistedHomError):
    """A configured cap (group size, degree) would be exceeded."""
