"""Galois cohomology of semisimple real algebraic groups over the reals.

Groups enter as a diagram with pair kinds, a fundamental-group choice F,
an involution, and a base Kac labeling; ``kac.h1`` returns the first
Galois cohomology set with explicit cocycle cocharacters, and
``oracle.brute_h1`` recomputes the count independently from the lattice
side for cross-validation.
"""

from .groupspec import (
    ComponentSpec,
    GroupSpec,
    RestrictedData,
    ValidationError,
    restricted_data,
    validate,
)
from .kac import CohClass, H1Result, enumerate_kac, h1, inner_forms
from .rootdata import PairKind, SimpleType

__all__ = [
    "CohClass",
    "ComponentSpec",
    "GroupSpec",
    "H1Result",
    "PairKind",
    "RestrictedData",
    "SimpleType",
    "ValidationError",
    "enumerate_kac",
    "h1",
    "inner_forms",
    "restricted_data",
    "validate",
]

__version__ = "0.1.0"
