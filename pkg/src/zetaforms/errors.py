"""Exception hierarchy shared by all zetaforms modules.

The CLI maps these onto distinct exit codes, so keep the split between
"bad input / hypothesis fails" (DomainError) and "resource cap hit"
(BudgetError) and "the library itself is inconsistent" (InternalCheckError).
"""


class ZetaformsError(Exception):
    """Base class for all package errors."""


class DomainError(ZetaformsError):
    """Input violates a documented precondition (not a bug)."""


class HypothesisViolation(DomainError):
    """The oscillation hypothesis fails for the supplied angles."""


class UndecidableAtPrecision(DomainError):
    """A congruence test landed too close to its decision boundary."""


class BudgetError(ZetaformsError):
    """A configured resource cap (index, precision, cutoff) was exceeded."""


class InternalCheckError(ZetaformsError):
    """A structural self-check failed; signals an implementation bug."""
