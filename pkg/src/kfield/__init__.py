"""Exact K-theory invariants for ring C*-algebras of function-field integer rings."""

from .errors import CrossCheckMismatch, KFieldError
from .ktheory import (
    FieldShape,
    adjoin_prime,
    analyze,
    base_stage,
    distinguish_fields,
    rationalized_k,
    torsion_report,
)

__all__ = [
    "CrossCheckMismatch",
    "FieldShape",
    "KFieldError",
    "adjoin_prime",
    "analyze",
    "base_stage",
    "distinguish_fields",
    "rationalized_k",
    "torsion_report",
]
__version__ = "0.1.0"
