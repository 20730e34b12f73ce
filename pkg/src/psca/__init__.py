"""Perfect sequence covering arrays: verification, feasibility filters,
isomorph-free catalogues and group constructions."""

from __future__ import annotations

from .core import (
    InputError,
    PermArray,
    VerifyResult,
    coverage_counts,
    covers,
    delete_symbol,
    distribution_vector,
    reduce,
    relabel,
    reverse,
    verify,
)
from .iso import canonical_form, isomorphic

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "PermArray",
    "VerifyResult",
    "canonical_form",
    "coverage_counts",
    "covers",
    "delete_symbol",
    "distribution_vector",
    "isomorphic",
    "reduce",
    "relabel",
    "reverse",
    "verify",
]
