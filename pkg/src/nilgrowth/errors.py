"""Typed errors shared across the package.

Exit-code mapping used by the CLI: verification failure -> 1, configuration
error -> 2, resource budget exceeded -> 3.
"""

from __future__ import annotations


class NilgrowthError(Exception):
    """Base class for package errors."""


class ConfigError(NilgrowthError):
    """Invalid configuration, schedule file, or polynomial text."""


class BudgetExceededError(NilgrowthError):
    """A dense materialization or term count would exceed the configured budget."""


class DegreeMismatchError(NilgrowthError):
    """Operands live in homogeneous components of different degrees."""


class FieldMismatchError(NilgrowthError):
    """Operands carry coefficients over different prime fields."""


class VerificationError(NilgrowthError):
    """An invariant check failed; carries the failing check name."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)
