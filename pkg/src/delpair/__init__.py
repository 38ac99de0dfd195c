"""delpair: exact arithmetic for Deligne pairings, tame symbols and friends.

Everything in here is desk-scale and exact: finite fields and the
rationals, dense univariate polynomial arithmetic (with an optional
compiled kernel), divisors on the projective line and on plane curves,
tame symbols and Weil reciprocity, the Deligne pairing as a scalar and
as a glued line, correspondences acting on divisor classes, Picard
groupoids presented by two-term complexes and butterflies, and the
Heisenberg central extension attached to a pair of finite abelian
groups.
"""

__version__ = "0.1.0"

from .gfield import GF, QQ, gf, field_from_label
from .kernels import BACKEND
from .poly import Poly
from .curve import ClosedPoint, Divisor, FracFun, infinity, point_of, poly_fun
from .symbols import (SymbolSum, deligne_scalar, gersten_norm, tame_symbol,
                      tame_vector, tame_vector_of, weil_product)
from .biform import BiForm
from .family import (FactoredFunction, FamilyDivisor, a1_cover,
                     compare_routes, cup_cocycle, deligne_norm_family,
                     intersection_number, lambda_boundary, p1_cover,
                     theta_cocycle)
from .correspond import (Correspondence, act, act_via_deligne, compose,
                         composition_point_check)
from .elliptic import EllipticCurve, ec_reduce
from .picard import (Butterfly, ChainMap, FGAbelianGroup, GroupHom, GroupIso,
                     HeisenbergGroup, TwoTermComplex, biadditivity_witness,
                     butterfly_baer_sum, butterfly_compose, coker_functor,
                     find_butterfly_iso, heisenberg, pi0, pi1)
from .parser import ParseError, parse_expr, print_expr
from .report import Report

__all__ = [
    "GF", "QQ", "gf", "field_from_label", "BACKEND", "__version__",
    "Poly", "ClosedPoint", "Divisor", "FracFun", "infinity", "point_of",
    "poly_fun", "SymbolSum", "deligne_scalar", "gersten_norm", "tame_symbol",
    "tame_vector", "tame_vector_of", "weil_product", "BiForm",
    "FactoredFunction", "FamilyDivisor", "a1_cover", "compare_routes",
    "cup_cocycle", "deligne_norm_family", "intersection_number",
    "lambda_boundary", "p1_cover", "theta_cocycle", "Correspondence", "act",
    "act_via_deligne", "compose", "composition_point_check", "EllipticCurve",
    "ec_reduce",
    "Butterfly", "ChainMap", "FGAbelianGroup", "GroupHom", "GroupIso",
    "HeisenbergGroup", "TwoTermComplex", "biadditivity_witness",
    "butterfly_baer_sum", "butterfly_compose", "coker_functor",
    "find_butterfly_iso", "heisenberg", "pi0", "pi1", "ParseError",
    "parse_expr", "print_expr", "Report",
]
