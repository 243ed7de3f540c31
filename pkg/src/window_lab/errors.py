"""Exception types shared across the package."""

from __future__ import annotations


class SequenceError(ValueError):
    """Malformed sequence text or an operation undefined for the given length."""


class BudgetExceeded(ValueError):
    """An enumeration would exceed the configured work budget."""

    def __init__(self, needed: int, budget: int, what: str = "sequences"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"refusing: would enumerate {needed} {what} (budget {budget}); "
            f"raise --budget or shrink the range"
        )


class InvariantViolation(AssertionError):
    """A checked property failed; carries the offending sequence."""

    def __init__(self, message: str, counterexample=None):
        self.counterexample = counterexample
        if counterexample is not None:
            message = f"{message}: {counterexample}"
        super().__init__(message)
