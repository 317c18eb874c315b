"""Exact construction and classification of the rational division algebras A(Q(√z), c)."""
__version__ = "0.1.0"

from .admissibility import (
    NotAdmissible,
    ProvenAdmissible,
    Unknown,
    decide_admissible,
    search_nontrivial_solution,
    system_of,
)
from .algebra import AlgebraSpec, Kind, Triple, classify_triple, right_nucleus_basis
from .isomorphism import are_isomorphic
from .quadfield import QuadElem, QuadField

__all__ = [
    "AlgebraSpec",
    "Kind",
    "NotAdmissible",
    "ProvenAdmissible",
    "QuadElem",
    "QuadField",
    "Triple",
    "Unknown",
    "are_isomorphic",
    "classify_triple",
    "decide_admissible",
    "right_nucleus_basis",
    "search_nontrivial_solution",
    "system_of",
]
