"""Bound quiver algebras, their modules and homological invariants."""

from .highest_weight import (DualExceptionalReport, HighestWeightReport, InconsistentCertificates,
                             check_dual_exceptional, costandard_module, is_highest_weight, standard_module)
from .homological import GlobalDimension, Resolution, Undetermined, ext, ext_dims, global_dimension, resolve
from .modules import Module, ModuleError, make_module, projective, simple
from .quiver import Algebra, AlgebraError, BoundQuiver, NotFiniteDimensional, quotient_by_vertices

__all__ = [
    "Algebra", "AlgebraError", "BoundQuiver", "DualExceptionalReport", "GlobalDimension",
    "HighestWeightReport", "InconsistentCertificates", "Module", "ModuleError", "NotFiniteDimensional",
    "Resolution", "Undetermined", "check_dual_exceptional", "costandard_module", "ext", "ext_dims",
    "global_dimension", "is_highest_weight", "make_module", "projective", "quotient_by_vertices",
    "resolve", "simple", "standard_module",
]
