"""Exact integral bases for P-recursive (shift) operators.

The package computes, over exact rational and number-field arithmetic,
local and global integral bases of the quotient module C(x)[S]/<L> of a
linear recurrence operator L, together with independent brute-force
verification of every result.
"""

from .errors import (
    IterationCapError,
    MissingRightBoundError,
    ParseError,
    PrecintError,
    SingularTransitionError,
)
from .fields import (
    INFINITY,
    AlgebraicPoint,
    NFElem,
    NumberField,
    Poly,
    Rational,
    RationalFunction,
    factor,
    galois_norm_uniformizer,
    galois_trace_sum,
    integer_shift,
    is_irreducible,
    nf_invert,
    nu_at_factor,
    nu_infinity,
)
from .qvalues import QExpansion, QRational, eval_shifted, nu_q, q_coefficient, q_expand
from .ore import (
    OreOperator,
    QuotientElement,
    SolutionBasis,
    anchored_basis,
    apply_element,
    default_anchor,
    ore_multiply,
    reduce_mod,
    solution_value,
)
from .valuation import (
    OrbitAnalysis,
    ZSpec,
    singular_points,
    val_at,
    valuation_growth,
    worklist,
)
from .integral import (
    BasisMatrix,
    GlobalRun,
    ShiftSpace,
    ToySpace,
    discriminant,
    find_alpha,
    global_integral_basis,
    local_integral_basis,
)
from .verify import (
    CertificateReport,
    RandomOperatorSpec,
    brute_val,
    certificate,
    module_equal_at,
    random_operator,
    random_operators,
)
from .exprs import (
    element_str,
    operator_str,
    parse_element,
    parse_operator,
    parse_point,
    parse_poly,
    poly_str,
    rf_str,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicPoint",
    "BasisMatrix",
    "CertificateReport",
    "GlobalRun",
    "INFINITY",
    "IterationCapError",
    "MissingRightBoundError",
    "NFElem",
    "NumberField",
    "OrbitAnalysis",
    "OreOperator",
    "ParseError",
    "Poly",
    "PrecintError",
    "QExpansion",
    "QRational",
    "QuotientElement",
    "Rational",
    "RationalFunction",
    "RandomOperatorSpec",
    "ShiftSpace",
    "SingularTransitionError",
    "SolutionBasis",
    "ToySpace",
    "ZSpec",
    "anchored_basis",
    "apply_element",
    "brute_val",
    "certificate",
    "default_anchor",
    "discriminant",
    "element_str",
    "eval_shifted",
    "factor",
    "find_alpha",
    "galois_norm_uniformizer",
    "galois_trace_sum",
    "global_integral_basis",
    "integer_shift",
    "is_irreducible",
    "local_integral_basis",
    "module_equal_at",
    "nf_invert",
    "nu_at_factor",
    "nu_infinity",
    "nu_q",
    "operator_str",
    "ore_multiply",
    "parse_element",
    "parse_operator",
    "parse_point",
    "parse_poly",
    "poly_str",
    "q_coefficient",
    "q_expand",
    "random_operator",
    "random_operators",
    "reduce_mod",
    "rf_str",
    "singular_points",
    "solution_value",
    "val_at",
    "valuation_growth",
    "worklist",
]
