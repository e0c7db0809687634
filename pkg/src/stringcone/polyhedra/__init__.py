"""Exact rational polyhedra: linear programming, Fourier-Motzkin, lattice points."""

from .core import (FM_DIM_LIMIT, HSystem, Implication, bounding_box, cones_equal,
                   contains_point, determinant, implies, inverse, is_unimodular,
                   lattice_points, transpose)
from .simplex import LPResult, linprog, solve_standard

__all__ = [
    "FM_DIM_LIMIT", "HSystem", "Implication", "LPResult", "bounding_box", "cones_equal",
    "contains_point", "determinant", "implies", "inverse", "is_unimodular",
    "lattice_points", "linprog", "solve_standard", "transpose",
]
