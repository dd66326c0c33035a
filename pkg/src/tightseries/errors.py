"""Exception types shared across the package."""


class DomainMismatchError(ValueError):
    """Operands live on different ground sets or structures."""


class ParseError(ValueError):
    """An element literal could not be parsed."""


class InvalidRankError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    def __init__(self, budget, what="elements"):
        super().__init__(f"budget of {budget} {what} exceeded")
        self.budget = budget


class PreconditionError(ValueError):
    pass


class InvalidSeriesError(ValueError):
    pass


class NotRegularError(ValueError):
    pass


class NotHomomorphismError(ValueError):
    pass


class TruncationError(ValueError):
    """The truncated carrier is too small for the requested check."""

    def __init__(self, required, given):
        super().__init__(f"truncation N={given} too small; need N >= {required}")
        self.required = required
        self.given = given
