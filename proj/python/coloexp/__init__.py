"""Capacity expansion with co-located renewable and storage resources."""

from ._core import (
    DataError,
    IoError,
    Problem,
    Result,
    annuitize,
    capital_recovery_factor,
    run_matrix,
    validate,
    write_summary,
)

__all__ = [
    "DataError",
    "IoError",
    "Problem",
    "Result",
    "annuitize",
    "capital_recovery_factor",
    "run_matrix",
    "validate",
    "write_summary",
]
