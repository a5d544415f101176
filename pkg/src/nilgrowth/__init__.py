"""Executable laboratory for a finitely generated nil algebra of slow growth.

The package builds the graded subspace tower U(2^n), V(2^n) inside the free
associative algebra on two letters over GF(p), derives the quotient-defining
ideal pieces E(n) with their R/S/Q/W window spaces, and checks the growth and
dimension estimates that bound the quotient algebra's Gelfand-Kirillov
dimension by 3.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    BudgetExceededError,
    ConfigError,
    DegreeMismatchError,
    FieldMismatchError,
    NilgrowthError,
    VerificationError,
)
from .linear import BUDGET, Budget, Subspace
from .freealg import GeneralPoly, HomPoly, parse_poly
from .schedule import Schedule
from .construction import ConditionReport, LevelStack, verify_conditions
from .store import load_stack, save_stack
from .quotient import (
    QuotientTable,
    verify_ideal,
    verify_main_estimate,
    verify_qadd,
    verify_sdim,
    verify_tdim,
    verify_totalsize,
    verify_wqsmall,
)
from .growth import HilbertProfile, check_growth_bound, gk_slope, hilbert

__all__ = [
    "BUDGET",
    "Budget",
    "BudgetExceededError",
    "ConditionReport",
    "ConfigError",
    "DegreeMismatchError",
    "FieldMismatchError",
    "GeneralPoly",
    "HilbertProfile",
    "HomPoly",
    "LevelStack",
    "NilgrowthError",
    "QuotientTable",
    "Schedule",
    "Subspace",
    "VerificationError",
    "__version__",
    "check_growth_bound",
    "gk_slope",
    "hilbert",
    "load_stack",
    "parse_poly",
    "save_stack",
    "verify_conditions",
    "verify_ideal",
    "verify_main_estimate",
    "verify_qadd",
    "verify_sdim",
    "verify_tdim",
    "verify_totalsize",
    "verify_wqsmall",
]
