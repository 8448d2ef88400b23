"""Phase / angular-momentum operator algebra in finite and infinite dimensions."""

from .finite import FiniteSpace
from .infinite import (
    WindingFunction,
    boundary_defect,
    canonical_limit_element,
    naive_commutator_element,
    overlap_c,
    phi_matrix_element,
    r_element_infinite,
)
from .limits import LimitEstimate, estimate_limit, geometric_schedule

__all__ = [
    "FiniteSpace",
    "LimitEstimate",
    "WindingFunction",
    "boundary_defect",
    "canonical_limit_element",
    "estimate_limit",
    "geometric_schedule",
    "naive_commutator_element",
    "overlap_c",
    "phi_matrix_element",
    "r_element_infinite",
]
