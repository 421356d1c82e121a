"""Perverse sheaves on finite simplicial complexes as modules over cellular quiver algebras."""

from .cellular import CellularAlgebra, build_quiver, constant_module, hypercohomology
from .perversity import Perversity, StratPerversity, builtin
from .scalars import GF2, QQ, Field
from .simplicial import SimplicialComplex, Stratification

__version__ = "0.1.0"

__all__ = [
    "CellularAlgebra", "Field", "GF2", "Perversity", "QQ", "SimplicialComplex", "StratPerversity",
    "Stratification", "build_quiver", "builtin", "constant_module", "hypercohomology",
]
