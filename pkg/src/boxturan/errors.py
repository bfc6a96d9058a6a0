"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs at least {needed} steps, budget is {budget}")


class ContextMismatch(ValueError):
    """Operands belong to different finite fields."""
