"""
Executable checks of pseudoinverse perturbation bounds.

Each check returns a BoundCheck so callers can tell apart "bound violated"
and "hypothesis not met". None of them raise on a failed inequality.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import ArgumentError, DimensionMismatchError
from ..models.checks import BoundCheck
from .core import as_dense, operator_norm, pseudoinverse, svd

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-10


def _has_full_column_rank(a: np.ndarray, rank_tol: Optional[float] = None) -> bool:
    return svd(a, rank_tol).rank == a.shape[1]


def _check_same_shape(a: np.ndarray, e: np.ndarray) -> None:
    if a.shape != e.shape:
        raise DimensionMismatchError(f"perturbation has shape {e.shape}, matrix has {a.shape}")


def check_scaled_inverse_bound(
    a: ArrayLike, g: ArrayLike, rel_tol: float = DEFAULT_REL_TOL
) -> BoundCheck:
    """
    ||(G A)^+|| <= ||G^{-1}|| ||A^+|| for A of full column rank and G nonsingular.

    Args:
        a: m x n matrix
        g: m x m matrix
        rel_tol: Relative slack on the bound
    """
    mat = as_dense(a, "A")
    gmat = as_dense(g, "G")
    if gmat.shape != (mat.shape[0], mat.shape[0]):
        raise DimensionMismatchError(
            f"G must be {mat.shape[0]}x{mat.shape[0]}, got {gmat.shape}"
        )

    b = gmat @ mat
    lhs = operator_norm(pseudoinverse(b))
    g_fac = svd(gmat)
    hypothesis = _has_full_column_rank(mat) and g_fac.rank == gmat.shape[0]
    rhs = None
    if hypothesis:
        g_inv_norm = 1.0 / float(g_fac.singular_values[-1])
        rhs = g_inv_norm * operator_norm(pseudoinverse(mat))

    return BoundCheck(
        name="scaled_inverse", lhs=lhs, rhs=rhs, hypothesis_met=hypothesis, rel_tol=rel_tol
    )


def check_perturbed_inverse_bound(
    a: ArrayLike,
    e: ArrayLike,
    use_delta: bool = False,
    rel_tol: float = DEFAULT_REL_TOL,
) -> BoundCheck:
    """
    Bound on ||(A + E)^+|| for A of full column rank, rows >= cols.

    With use_delta=False the bound is ||A^+|| / (1 - ||E A^+||) under
    ||E A^+|| < 1. With use_delta=True it is ||A^+|| / (1 - Delta) under
    Delta = ||E|| ||A^+|| < 1.
    """
    mat = as_dense(a, "A")
    pert = as_dense(e, "E")
    _check_same_shape(mat, pert)

    a_pinv = pseudoinverse(mat)
    a_pinv_norm = operator_norm(a_pinv)
    lhs = operator_norm(pseudoinverse(mat + pert))

    if use_delta:
        measure = operator_norm(pert) * a_pinv_norm
        name = "perturbed_inverse_delta"
    else:
        measure = operator_norm(pert @ a_pinv)
        name = "perturbed_inverse"

    hypothesis = (
        mat.shape[0] >= mat.shape[1] and _has_full_column_rank(mat) and measure < 1.0
    )
    rhs = a_pinv_norm / (1.0 - measure) if hypothesis else None
    return BoundCheck(name=name, lhs=lhs, rhs=rhs, hypothesis_met=hypothesis, rel_tol=rel_tol)


def check_inverse_difference_bound(
    a: ArrayLike, e: ArrayLike, rel_tol: float = DEFAULT_REL_TOL
) -> BoundCheck:
    """||(A + E)^+ - A^+|| <= sqrt(2) Delta/(1 - Delta) ||A^+|| when Delta < 1."""
    mat = as_dense(a, "A")
    pert = as_dense(e, "E")
    _check_same_shape(mat, pert)

    a_pinv = pseudoinverse(mat)
    a_pinv_norm = operator_norm(a_pinv)
    delta = operator_norm(pert) * a_pinv_norm
    lhs = operator_norm(pseudoinverse(mat + pert) - a_pinv)

    hypothesis = mat.shape[0] >= mat.shape[1] and _has_full_column_rank(mat) and delta < 1.0
    rhs = np.sqrt(2.0) * delta / (1.0 - delta) * a_pinv_norm if hypothesis else None
    return BoundCheck(
        name="inverse_difference", lhs=lhs, rhs=rhs, hypothesis_met=hypothesis, rel_tol=rel_tol
    )


def check_product_rule(
    a: ArrayLike, b: ArrayLike, rel_tol: float = DEFAULT_REL_TOL
) -> BoundCheck:
    """
    (A B)^+ = B^+ A^+ when rank(A) = rank(B) = inner dimension.

    lhs is ||(AB)^+ - B^+ A^+||, rhs is rel_tol * ||(AB)^+||.
    """
    amat = as_dense(a, "A")
    bmat = as_dense(b, "B")
    if amat.shape[1] != bmat.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {amat.shape} by {bmat.shape}")

    inner = amat.shape[1]
    hypothesis = svd(amat).rank == inner and svd(bmat).rank == inner
    ab_pinv = pseudoinverse(amat @ bmat)
    lhs = operator_norm(ab_pinv - pseudoinverse(bmat) @ pseudoinverse(amat))
    rhs = rel_tol * max(operator_norm(ab_pinv), 1.0) if hypothesis else None
    return BoundCheck(name="product_rule", lhs=lhs, rhs=rhs, hypothesis_met=hypothesis, rel_tol=0.0)


@dataclass(frozen=True)
class SequencePoint:
    """One member A_j = A + E/j of a converging matrix sequence."""

    index: int
    rank: int
    inverse_norm: float
    difference_norm: float


def pseudoinverse_sequence(
    a: ArrayLike,
    e: ArrayLike,
    indices: ArrayLike,
    rank_tol: Optional[float] = None,
) -> list[SequencePoint]:
    """
    Track A_j^+ along A_j = A + E/j.

    A_j^+ converges to A^+ exactly when rank(A_j) settles at rank(A); a rank
    drop at the limit shows up as ||A_j^+|| growing without bound.

    Args:
        a: Limit matrix A
        e: Perturbation direction E
        indices: Positive sequence indices j
        rank_tol: Relative rank cutoff for A_j and A

    Returns:
        One SequencePoint per index, in the given order
    """
    mat = as_dense(a, "A")
    pert = as_dense(e, "E")
    _check_same_shape(mat, pert)
    limit_pinv = pseudoinverse(mat, rank_tol)

    points = []
    for j in np.asarray(indices, dtype=np.int64).ravel():
        if j < 1:
            raise ArgumentError(f"sequence indices must be >= 1, got {j}")
        a_j = mat + pert / float(j)
        fac = svd(a_j, rank_tol)
        a_j_pinv = pseudoinverse(a_j, rank_tol)
        points.append(
            SequencePoint(
                index=int(j),
                rank=fac.rank,
                inverse_norm=operator_norm(a_j_pinv),
                difference_norm=operator_norm(a_j_pinv - limit_pinv),
            )
        )
    logger.debug(f"Tracked {len(points)} members of a pseudoinverse sequence")
    return points
