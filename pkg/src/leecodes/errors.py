"""Shared error types."""

from __future__ import annotations


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured budget.

    Raised up front, before any work is done: callers get a refusal,
    never a partial answer.
    """
