"""Exact symbolic computation in the local rings of the node (xy = 0, or
xy = s over a base) and the cusp (x^2 = y^3).

The library classifies finite-colength ideals in these rings, derives the
polynomial relations cutting out flat deformations and nested flags of such
ideals, builds the resulting local models with lci certification, and computes
tangent-space dimensions via Hom(I, R/I).  Everything is exact: coefficients
are rationals, nilpotents are tracked in truncated Artin algebras, and all
claims are cross-checked against a brute-force linear-algebra oracle.
"""

from .coeffs import CoeffAlgebra
from .rings import CurveRing, RingElement, IdealGens

__all__ = ["CoeffAlgebra", "CurveRing", "RingElement", "IdealGens"]
__version__ = "0.1.0"
