"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user input: bad JSON, bad schema, out-of-range indices."""


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before reaching a conclusion."""


class SizeLimitError(ValueError):
    """An exhaustive routine was asked to run above its size bound."""
