"""Simplicial push-offs of surface maps and exact invariants of free group
character varieties."""

from .algebra import FgAbelianGroup, homology, pi1_presentation, smith_normal_form
from .complex import SimplicialComplex, SimplicialMap, barycentric_subdivision
from .invariants import (codim_bounds, duality_check, pi1_charvar, pi1_irr, pi2_full,
                         pi_k_irr, poincare_su2)
from .polynomial import IntPolynomial

__version__ = "0.1.0"

__all__ = [
    "FgAbelianGroup", "IntPolynomial", "SimplicialComplex", "SimplicialMap",
    "barycentric_subdivision", "codim_bounds", "duality_check", "homology",
    "pi1_charvar", "pi1_irr", "pi1_presentation", "pi2_full", "pi_k_irr",
    "poincare_su2", "smith_normal_form",
]
