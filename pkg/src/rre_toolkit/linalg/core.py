"""Dense SVD, Moore-Penrose pseudoinverse and minimum-norm least squares."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import ArgumentError, DimensionMismatchError, NumericalFailureError, ZeroRankError

logger = logging.getLogger(__name__)

DenseMatrix = NDArray[np.float64]
Vector = NDArray[np.float64]

MACHINE_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD A = U diag(s) Vt with the numerical rank under a relative cutoff."""

    left: DenseMatrix
    singular_values: Vector
    right_t: DenseMatrix
    rank: int
    rank_tol: float

    @property
    def shape(self) -> tuple[int, int]:
        return (self.left.shape[0], self.right_t.shape[1])

    @property
    def largest(self) -> float:
        """Largest singular value, 0 for an all-zero matrix."""
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    def reconstruct(self) -> DenseMatrix:
        """Rebuild the factored matrix."""
        return (self.left * self.singular_values) @ self.right_t


def as_dense(a: ArrayLike, name: str = "matrix") -> DenseMatrix:
    """
    Validate and convert input to a finite 2-D float64 array.

    Args:
        a: Matrix-like input
        name: Name used in error messages

    Returns:
        2-D float64 array with at least one row and one column
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ArgumentError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ArgumentError(f"{name} must have at least one row and column, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} has non-finite entries")
    return arr


def as_vector(b: ArrayLike, name: str = "vector") -> Vector:
    """Validate and convert input to a finite 1-D float64 array."""
    arr = np.asarray(b, dtype=np.float64)
    if arr.ndim != 1:
        raise ArgumentError(f"{name} must be 1-D, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} has non-finite entries")
    return arr


def default_rank_tol(shape: tuple[int, ...]) -> float:
    """Relative rank cutoff max(rows, cols) * eps."""
    return max(shape) * MACHINE_EPS


def _resolve_rank_tol(shape: tuple[int, ...], rank_tol: Optional[float]) -> float:
    if rank_tol is None:
        return default_rank_tol(shape)
    if rank_tol < 0 or not np.isfinite(rank_tol):
        raise ArgumentError(f"rank_tol must be finite and >= 0, got {rank_tol}")
    return float(rank_tol)


def svd(a: ArrayLike, rank_tol: Optional[float] = None) -> SvdFactors:
    """
    Thin singular value decomposition.

    Singular values come back sorted non-increasing. The LAPACK kernel behind
    numpy is deterministic for a fixed input.

    Args:
        a: Input matrix
        rank_tol: Relative cutoff; singular values <= rank_tol * sigma_1 count as zero

    Returns:
        SvdFactors with numerical rank

    Raises:
        NumericalFailureError: If the SVD kernel does not converge
    """
    mat = as_dense(a)
    tol = _resolve_rank_tol(mat.shape, rank_tol)

    try:
        u, s, vt = np.linalg.svd(mat, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge for {mat.shape} matrix") from exc

    if not np.all(np.isfinite(s)):
        raise NumericalFailureError("SVD produced non-finite singular values")

    sigma_1 = float(s[0]) if s.size else 0.0
    rank = int(np.count_nonzero(s > tol * sigma_1)) if sigma_1 > 0.0 else 0

    return SvdFactors(left=u, singular_values=s, right_t=vt, rank=rank, rank_tol=tol)


def pseudoinverse(a: ArrayLike, rank_tol: Optional[float] = None) -> DenseMatrix:
    """
    Moore-Penrose pseudoinverse via the truncated SVD.

    The zero matrix maps to the (transposed-shape) zero matrix.
    """
    return pseudoinverse_from_factors(svd(a, rank_tol))


def pseudoinverse_from_factors(factors: SvdFactors) -> DenseMatrix:
    """Assemble A+ from precomputed SVD factors."""
    rows, cols = factors.shape
    r = factors.rank
    if r == 0:
        return np.zeros((cols, rows))
    v_r = factors.right_t[:r].T
    return (v_r / factors.singular_values[:r]) @ factors.left[:, :r].T


def min_norm_lsq(
    a: ArrayLike,
    b: ArrayLike,
    rank_tol: Optional[float] = None,
    factors: Optional[SvdFactors] = None,
) -> Vector:
    """
    Minimum-norm minimizer of ||A x - b||, i.e. x = A+ b.

    Args:
        a: Matrix A
        b: Right-hand side, length rows(A)
        rank_tol: Relative rank cutoff
        factors: Reuse an existing SVD of A

    Returns:
        Solution vector of length cols(A)
    """
    mat = as_dense(a)
    rhs = as_vector(b, "b")
    if rhs.shape[0] != mat.shape[0]:
        raise DimensionMismatchError(
            f"b has length {rhs.shape[0]} but A has {mat.shape[0]} rows"
        )

    fac = factors if factors is not None else svd(mat, rank_tol)
    r = fac.rank
    if r == 0:
        return np.zeros(mat.shape[1])

    coeffs = (fac.left[:, :r].T @ rhs) / fac.singular_values[:r]
    return fac.right_t[:r].T @ coeffs


def smallest_nonzero_singular(a: ArrayLike, rank_tol: Optional[float] = None) -> float:
    """
    Smallest singular value above the rank cutoff, equal to 1/||A+||.

    Raises:
        ZeroRankError: If A is numerically zero
    """
    fac = svd(a, rank_tol)
    if fac.rank == 0:
        raise ZeroRankError("matrix is numerically zero; no nonzero singular value")
    return float(fac.singular_values[fac.rank - 1])


def operator_norm(a: ArrayLike) -> float:
    """Spectral norm (largest singular value)."""
    mat = np.asarray(a, dtype=np.float64)
    if mat.size == 0:
        return 0.0
    if mat.ndim == 1:
        return float(np.linalg.norm(mat))
    return float(np.linalg.norm(mat, 2))


def penrose_residuals(a: ArrayLike, a_pinv: ArrayLike) -> tuple[float, float, float, float]:
    """
    Spectral-norm residuals of the four Penrose conditions.

    Returns:
        (||A X A - A||, ||X A X - X||, ||(A X)^T - A X||, ||(X A)^T - X A||)
    """
    mat = as_dense(a)
    x = as_dense(a_pinv, "pseudoinverse")
    ax = mat @ x
    xa = x @ mat
    return (
        operator_norm(ax @ mat - mat),
        operator_norm(xa @ x - x),
        operator_norm(ax.T - ax),
        operator_norm(xa.T - xa),
    )


def full_column_rank_inverse(a: ArrayLike) -> DenseMatrix:
    """(A^T A)^{-1} A^T for A of full column rank."""
    mat = as_dense(a)
    try:
        return np.linalg.solve(mat.T @ mat, mat.T)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError("A^T A is singular; A is not of full column rank") from exc


def full_row_rank_inverse(a: ArrayLike) -> DenseMatrix:
    """A^T (A A^T)^{-1} for A of full row rank."""
    return full_column_rank_inverse(as_dense(a).T).T
