"""Exact tools for non-trivial intersecting and bounded-matching r-partite families."""

from .analysis import (
    analyze,
    fixed_coordinates,
    is_nontrivial_intersecting_family,
    is_nontrivial_matching_family,
    is_t_intersecting,
    matching_number,
    transversal_number,
)
from .constructions import (
    construct_E,
    construct_K_rt,
    construct_W_r,
    construct_W_rt,
    extend,
    formula,
)
from .model import Family, FamilyError, PartSpec, SetFamily, complete_family, make_family
from .search import SearchProblem, solve, solve_uniform, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "Family",
    "FamilyError",
    "PartSpec",
    "SearchProblem",
    "SetFamily",
    "analyze",
    "complete_family",
    "construct_E",
    "construct_K_rt",
    "construct_W_r",
    "construct_W_rt",
    "extend",
    "fixed_coordinates",
    "formula",
    "is_nontrivial_intersecting_family",
    "is_nontrivial_matching_family",
    "is_t_intersecting",
    "make_family",
    "matching_number",
    "solve",
    "solve_uniform",
    "transversal_number",
    "verify_theorem",
]
