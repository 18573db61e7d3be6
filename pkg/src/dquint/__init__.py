"""Exotic rational Diophantine quintuples and integer D(n)-quintuples with square elements."""

from .dtuples import (
    IntegerSquareQuintuple,
    RationalTuple,
    clear_to_square_quintuple,
    is_dn_tuple,
    is_exotic_quintuple,
    is_regular_quadruple,
    regular_extensions,
    scale,
)
from .families import FAMILIES, generate, get_family, quadruple_family_sv, verify_static_examples
from .param import SurfacePoint, p_map, s_of, surface_rhs

__version__ = "0.1.0"
