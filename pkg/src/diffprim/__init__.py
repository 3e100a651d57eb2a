"""diffprim: exact differential-algebra workbench.

Exact rational arithmetic, differential polynomial rings, presented
differential fields with transcendence-degree computation, symbolic Wronskian
families, and primitive-element search with machine-checkable certificates.
"""

from __future__ import annotations

from .algebra import MultiPoly, RatFunc, Rational, poly_gcd
from .diffpoly import (
    DEFAULT_LAMBDA_BASE,
    DerivSymbol,
    DiffPoly,
    LambdaConfig,
    diff_substitute,
    eval_lambda_tower,
    formal_derive,
    lambda_derive,
    lambda_shift,
)
from .fields import (
    DiffField,
    FieldElement,
    MembershipCertificate,
    TrdegReport,
    alg_trdeg,
    derive_element,
    diff_trdeg,
    is_nonconstant,
    member_of_tower,
    monomials_up_to,
    nonvanishing_witness,
    prolongation,
)
from .parsing import (
    ExprAst,
    FieldFile,
    ast_to_ratfunc,
    build_field,
    parse_expr,
    parse_field_file,
)
from .search import (
    DensityResult,
    PrimitiveResult,
    SearchConfig,
    density_step,
    density_step_with_factor,
    find_primitive,
    lambda_search,
    reduce_to_two,
)
from .univariate import UPoly, candidate_polys
from .wronskian import (
    FamilyDecomposition,
    LemmaCheck,
    coefficient_determinant,
    family_decomposition,
    family_wronskian,
    independence_witness,
    lemma_checks,
    wronskian,
)

__version__ = "0.1.0"

__all__ = [
    "MultiPoly",
    "RatFunc",
    "Rational",
    "poly_gcd",
    "DerivSymbol",
    "DiffPoly",
    "LambdaConfig",
    "DEFAULT_LAMBDA_BASE",
    "formal_derive",
    "lambda_derive",
    "lambda_shift",
    "eval_lambda_tower",
    "diff_substitute",
    "DiffField",
    "FieldElement",
    "TrdegReport",
    "MembershipCertificate",
    "alg_trdeg",
    "diff_trdeg",
    "derive_element",
    "prolongation",
    "is_nonconstant",
    "nonvanishing_witness",
    "member_of_tower",
    "monomials_up_to",
    "ExprAst",
    "FieldFile",
    "parse_expr",
    "parse_field_file",
    "ast_to_ratfunc",
    "build_field",
    "UPoly",
    "candidate_polys",
    "SearchConfig",
    "DensityResult",
    "PrimitiveResult",
    "density_step",
    "density_step_with_factor",
    "reduce_to_two",
    "lambda_search",
    "find_primitive",
    "FamilyDecomposition",
    "LemmaCheck",
    "wronskian",
    "family_wronskian",
    "family_decomposition",
    "independence_witness",
    "coefficient_determinant",
    "lemma_checks",
    "__version__",
]
