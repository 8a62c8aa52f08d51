"""Exact polynomial arithmetic, elimination and complex root finding."""
from .hompoly import VARS, BinaryForm, HomPoly, monomials, var_index
from .numberfield import NFElement, NumberField, common_field, format_exact, to_complex, to_mpc
from .parse import NonHomogeneousError, ParseError, parse_point, parse_polynomial
from .roots import (
    PRECISION_LADDER,
    FactorProfile,
    RootFindingError,
    binary_factor_profile,
    complex_roots,
    numeric_roots,
)
from .univariate import (
    UPoly,
    bareiss_det,
    discriminant,
    factor_rational,
    interpolate,
    resultant,
    resultant_by_evaluation,
    squarefree_decomposition,
    squarefree_part,
    sylvester_matrix,
)


def derive(p: HomPoly, var) -> HomPoly:
    return p.derive(var)


def evaluate(p: HomPoly, point):
    return p.evaluate(point)


__all__ = [
    "VARS", "BinaryForm", "HomPoly", "monomials", "var_index",
    "NFElement", "NumberField", "common_field", "format_exact", "to_complex", "to_mpc",
    "NonHomogeneousError", "ParseError", "parse_point", "parse_polynomial",
    "PRECISION_LADDER", "FactorProfile", "RootFindingError", "binary_factor_profile",
    "complex_roots", "numeric_roots",
    "UPoly", "bareiss_det", "discriminant", "factor_rational", "interpolate", "resultant",
    "resultant_by_evaluation", "squarefree_decomposition", "squarefree_part", "sylvester_matrix",
    "derive", "evaluate",
]
