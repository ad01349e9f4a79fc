"""Invariants of real C*-algebras: representation types, real Wedderburn
decompositions, graded KO-type groups, cyclic group cohomology, Brauer
groups of simplicial Real spaces and orientifold duality classes."""

from realcstar.errors import RealCStarError
from realcstar.intlinalg import FgAbGroup, IntMatrix
from realcstar.multiplicity import OMEGA

__version__ = "0.1.0"

__all__ = ["FgAbGroup", "IntMatrix", "OMEGA", "RealCStarError", "__version__"]
