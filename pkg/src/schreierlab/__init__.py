"""Finite-algebra toolkit for Schreier split extensions, special objects and
natural imaginary splittings of groups, Lie algebras and pointed sets."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .algebra import (
    FiniteGroup,
    FiniteMonoid,
    MonoidHom,
    cyclic,
    dihedral,
    from_presentation,
    hom,
    product,
    quaternion,
    semilattice,
    symmetric,
    validate_monoid,
)
from .errors import AlgebraError, FormatError
from .schreier import Point, SplitExtension, analyze, split_extension
from .special import agreement, is_schreier_special
from .templates import SIMPLE, SplittingTemplate, induced_op, is_2engel, parse_template, special_wrt

__all__ = [
    "BACKEND",
    "AlgebraError",
    "FiniteGroup",
    "FiniteMonoid",
    "FormatError",
    "MonoidHom",
    "Point",
    "SIMPLE",
    "SplitExtension",
    "SplittingTemplate",
    "agreement",
    "analyze",
    "cyclic",
    "dihedral",
    "from_presentation",
    "hom",
    "induced_op",
    "is_2engel",
    "is_schreier_special",
    "parse_template",
    "product",
    "quaternion",
    "semilattice",
    "special_wrt",
    "split_extension",
    "symmetric",
    "validate_monoid",
]
