"""Exact computer algebra for SU(2) spin matrices of arbitrary dimension:
construction, symmetric-product reduction identities, and canonical
rewriting of spin-operator expressions.
"""

from .charid import (
    CharCoeffs,
    DiscoveryError,
    Identity,
    VerificationReport,
    a1_closed,
    a2_closed,
    an1_closed,
    an_closed,
    b_coeffs,
    build_identity,
    char_coeffs,
    discover_identity,
    identity_to_json,
    identity_to_latex,
    max_multipole_order,
    power_sum,
    verify_identity,
)
from .rewrite import (
    NCPolynomial,
    NormalForm,
    ParseError,
    evaluate,
    parse,
    pbw_normalize,
    reduce_degree,
    render,
    sym_words,
    to_json_dict,
)
from .scalar import (
    Radical,
    Rational,
    Scalar,
    UnsupportedInverseError,
    sqrt_of_rational,
    squarefree_decompose,
)
from .spinrep import (
    Matrix,
    SingularMatrixError,
    SpinRep,
    build_generators,
    casimir,
    commutation_holds,
    conjugate_by,
    conjugate_rep,
    eigenvalue_list,
    is_hermitian,
)
from .symalg import (
    IndexMultiset,
    SymSession,
    all_multisets,
    antisym_reduce_demo,
    epsilon,
    gen_delta,
    pairing_count,
    sym_product,
)

__version__ = "0.1.0"

__all__ = [
    "CharCoeffs",
    "DiscoveryError",
    "Identity",
    "IndexMultiset",
    "Matrix",
    "NCPolynomial",
    "NormalForm",
    "ParseError",
    "Radical",
    "Rational",
    "Scalar",
    "SingularMatrixError",
    "SpinRep",
    "SymSession",
    "UnsupportedInverseError",
    "VerificationReport",
    "a1_closed",
    "a2_closed",
    "all_multisets",
    "an1_closed",
    "an_closed",
    "antisym_reduce_demo",
    "b_coeffs",
    "build_generators",
    "build_identity",
    "casimir",
    "char_coeffs",
    "commutation_holds",
    "conjugate_by",
    "conjugate_rep",
    "discover_identity",
    "eigenvalue_list",
    "epsilon",
    "evaluate",
    "gen_delta",
    "identity_to_json",
    "identity_to_latex",
    "is_hermitian",
    "max_multipole_order",
    "pairing_count",
    "parse",
    "pbw_normalize",
    "power_sum",
    "reduce_degree",
    "render",
    "sqrt_of_rational",
    "squarefree_decompose",
    "sym_product",
    "sym_words",
    "to_json_dict",
    "verify_identity",
]
