"""Exact integer engine for the coefficients of
q * prod_k (1 - q^(a*k))^3 (1 - q^(b*k))^3 and for representations of
integers by positive-definite binary quadratic forms, plus a harness
that verifies the constructive identities tying the two together for
primes p = a*x^2 + b*y^2.
"""

from .arith import (
    PrimeSieve,
    SigmaTable,
    gauss_doubling,
    is_prime,
    jacobsthal,
    kronecker,
    sieve_primes,
    sigma,
    sigma_scaled,
    weighted_sigma,
)
from .errors import InternalInconsistencyError, PartitionCapError, ResourceLimitError
from .etaseries import (
    DEFAULT_PARTITION_CAP,
    METHODS,
    CoeffTable,
    JacobiTerm,
    LambdaParams,
    PartitionTerm,
    jacobi_cube,
    lambda_from_reps,
    lambda_multinomial,
    lambda_table,
    partition_terms,
)
from .quadform import (
    ClassGroup,
    Discriminant,
    QuadForm,
    RepSet,
    class_group,
    compose,
    discriminant_info,
    find_rep,
    inverse,
    normalized_reps,
    reduce,
    representations,
)
from .theorems import (
    CLOSED_FAMILIES,
    FALSIFIED,
    HOLDS,
    NOT_APPLICABLE,
    ConstructionCase,
    RangeReport,
    TableCache,
    Verdict,
    case_arity,
    case_ids,
    case_summary,
    closed_form,
    make_case,
    range_report,
    verify_construction,
    verify_product,
    verify_thm53,
)

__version__ = "0.1.0"

__all__ = [
    "CLOSED_FAMILIES",
    "ClassGroup",
    "CoeffTable",
    "ConstructionCase",
    "DEFAULT_PARTITION_CAP",
    "Discriminant",
    "FALSIFIED",
    "HOLDS",
    "InternalInconsistencyError",
    "JacobiTerm",
    "LambdaParams",
    "METHODS",
    "NOT_APPLICABLE",
    "PartitionCapError",
    "PartitionTerm",
    "PrimeSieve",
    "QuadForm",
    "RangeReport",
    "RepSet",
    "ResourceLimitError",
    "SigmaTable",
    "TableCache",
    "Verdict",
    "case_arity",
    "case_ids",
    "case_summary",
    "class_group",
    "closed_form",
    "compose",
    "discriminant_info",
    "find_rep",
    "gauss_doubling",
    "inverse",
    "is_prime",
    "jacobi_cube",
    "jacobsthal",
    "kronecker",
    "lambda_from_reps",
    "lambda_multinomial",
    "lambda_table",
    "make_case",
    "normalized_reps",
    "partition_terms",
    "range_report",
    "reduce",
    "representations",
    "sieve_primes",
    "sigma",
    "sigma_scaled",
    "verify_construction",
    "verify_product",
    "verify_thm53",
    "weighted_sigma",
]
