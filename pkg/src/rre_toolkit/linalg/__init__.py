"""Dense linear algebra: SVD, pseudoinverses and perturbation checks."""

from .core import (
    MACHINE_EPS,
    DenseMatrix,
    SvdFactors,
    Vector,
    as_dense,
    as_vector,
    default_rank_tol,
    full_column_rank_inverse,
    full_row_rank_inverse,
    min_norm_lsq,
    operator_norm,
    penrose_residuals,
    pseudoinverse,
    pseudoinverse_from_factors,
    smallest_nonzero_singular,
    svd,
)
from .perturbation import (
    SequencePoint,
    check_inverse_difference_bound,
    check_perturbed_inverse_bound,
    check_product_rule,
    check_scaled_inverse_bound,
    pseudoinverse_sequence,
)

__all__ = [
    "MACHINE_EPS",
    "DenseMatrix",
    "SequencePoint",
    "SvdFactors",
    "Vector",
    "as_dense",
    "as_vector",
    "check_inverse_difference_bound",
    "check_perturbed_inverse_bound",
    "check_product_rule",
    "check_scaled_inverse_bound",
    "default_rank_tol",
    "full_column_rank_inverse",
    "full_row_rank_inverse",
    "min_norm_lsq",
    "operator_norm",
    "penrose_residuals",
    "pseudoinverse",
    "pseudoinverse_from_factors",
    "pseudoinverse_sequence",
    "smallest_nonzero_singular",
    "svd",
]
