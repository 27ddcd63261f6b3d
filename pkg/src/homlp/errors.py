"""Exception types and enumeration budgets shared across the package."""
from __future__ import annotations

import os

__all__ = [
    "HomlpError",
    "ParseError",
    "DomainError",
    "BudgetExceeded",
    "resolve_budget",
]


class HomlpError(Exception):
    """Base class for all errors raised by homlp."""


class ParseError(HomlpError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(HomlpError, ValueError):
    """Arguments outside the domain of a constructor, formula or identity."""


class BudgetExceeded(HomlpError):
    """An enumeration or search exceeded its configured budget.

    Never caught internally to fall back on an approximation.
    """

    def __init__(self, what: str, budget: int, needed: int | None = None):
        self.what = what
        self.budget = budget
        self.needed = needed
        msg = f"{what}: budget {budget} exceeded"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)


def resolve_budget(explicit: int | None, default: int) -> int:
    """Explicit argument wins, then ``HOMLP_BUDGET``, then the default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("HOMLP_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError as exc:
            raise ParseError(f"HOMLP_BUDGET is not a number: {env!r}") from exc
    return default
