"""Exception types shared across the library."""


class AmenactError(Exception):
    """Base class for all library errors."""


class GroupMismatchError(AmenactError):
    """Operands live in different abelian groups."""


class MonoidMismatchError(AmenactError):
    """Operands live in different monoids."""


class NotCancellativeError(AmenactError):
    """A candidate monoid violates cancellativity."""


class UnsupportedQuotientError(AmenactError):
    """The requested quotient falls outside the supported shapes."""


class NotInvariantError(AmenactError):
    """A subgroup is not invariant under the action; carries a witness."""

    def __init__(self, message, generator=None, element=None):
        super().__init__(message)
        self.generator = generator
        self.element = element


class NotGoodSectionError(AmenactError):
    """The homomorphism/section pair is not good where goodness is required."""


class NotSemiGoodError(AmenactError):
    """Fiber conjugation was requested at an element that is not semi-good."""


class UndecidableFamilyError(AmenactError):
    """No symbolic goodness rule is available for this homomorphism family."""


class BudgetExceededError(AmenactError):
    """An element or search budget was exhausted.

    ``completed`` holds the largest index/size that finished before the
    budget ran out, when that is meaningful.
    """

    def __init__(self, message, completed=None):
        super().__init__(message)
        self.completed = completed


class SearchBudgetError(BudgetExceededError):
    """A bounded search (canonical-net box scan) exhausted its budget."""


class WindowEscapeError(AmenactError):
    """A profinite-window operation needed coordinates outside the window."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class InvalidWitnessError(AmenactError):
    """A tiling witness failed the checks required before a derived test."""


class SchemaError(AmenactError):
    """A scenario file does not match the schema."""
