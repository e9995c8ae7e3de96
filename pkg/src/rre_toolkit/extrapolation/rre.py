"""
Reduced Rank Extrapolation on a window of fixed-point iterates.

The production path solves the unconstrained problem xi = -W^+ u_n and
recovers the affine weights gamma from xi. gamma_direct solves the
constrained formulation directly and is kept as a cross-check.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..errors import (
    ArgumentError,
    DegenerateWindowError,
    DimensionMismatchError,
    NumericalFailureError,
)
from ..linalg.core import MACHINE_EPS, as_dense, as_vector, min_norm_lsq, svd
from ..models.extrapolation import ExtrapolationResult

logger = logging.getLogger(__name__)

# Differences below this multiple of eps * ||window|| count as zero.
ZERO_DIFFERENCE_FACTOR = 64.0


@dataclass(frozen=True)
class IterateWindow:
    """Iterates x_n, ..., x_{n+k+1} stored as the columns of an N x (k+2) array."""

    n: int
    vectors: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ArgumentError(f"window base index must be >= 0, got {self.n}")
        vecs = as_dense(self.vectors, "window")
        if vecs.shape[1] < 3:
            raise ArgumentError(
                f"a window needs k+2 >= 3 iterates, got {vecs.shape[1]}"
            )
        object.__setattr__(self, "vectors", vecs)

    @classmethod
    def from_iterates(cls, iterates: Sequence[ArrayLike], n: int, k: int) -> "IterateWindow":
        """
        Cut the window at n out of an iterate list x_0, x_1, ...

        Raises:
            ArgumentError: If the list is too short or k < 1
            DimensionMismatchError: If the iterates differ in length
        """
        if k < 1:
            raise ArgumentError(f"k must be >= 1, got {k}")
        if n < 0:
            raise ArgumentError(f"n must be >= 0, got {n}")
        needed = n + k + 2
        if len(iterates) < needed:
            raise ArgumentError(
                f"window at n={n} with k={k} needs {needed} iterates, got {len(iterates)}"
            )
        selected = [as_vector(x, f"x_{n + i}") for i, x in enumerate(iterates[n:needed])]
        dims = {x.shape[0] for x in selected}
        if len(dims) != 1:
            raise DimensionMismatchError(f"iterates have mixed dimensions {sorted(dims)}")
        return cls(n=n, vectors=np.column_stack(selected))

    @property
    def k(self) -> int:
        return self.vectors.shape[1] - 2

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    def iterate(self, i: int) -> np.ndarray:
        """x_{n+i}."""
        return self.vectors[:, i]


@dataclass(frozen=True)
class DifferenceMatrices:
    """U_k (first differences, N x (k+1)) and W_{k-1} (second differences, N x k)."""

    u: np.ndarray
    w: np.ndarray

    @property
    def u_n(self) -> np.ndarray:
        return self.u[:, 0]


def build_differences(window: IterateWindow) -> DifferenceMatrices:
    """u_m = x_{m+1} - x_m and w_m = u_{m+1} - u_m over the window."""
    u = np.diff(window.vectors, axis=1)
    w = np.diff(u, axis=1)
    return DifferenceMatrices(u=u, w=w)


def gamma_from_xi(xi: ArrayLike) -> np.ndarray:
    """gamma_0 = 1 - xi_0, gamma_i = xi_{i-1} - xi_i, gamma_k = xi_{k-1}."""
    x = as_vector(xi, "xi")
    return -np.diff(np.concatenate(([1.0], x, [0.0])))


def xi_from_gamma(gamma: ArrayLike) -> np.ndarray:
    """xi_j = sum of gamma_i for i > j."""
    g = as_vector(gamma, "gamma")
    return np.cumsum(g[::-1])[::-1][1:]


def _zero_threshold(window: IterateWindow) -> float:
    scale = float(np.max(np.linalg.norm(window.vectors, axis=0)))
    return ZERO_DIFFERENCE_FACTOR * MACHINE_EPS * scale


def extrapolate(window: IterateWindow, rank_tol: Optional[float] = None) -> ExtrapolationResult:
    """
    Compute s_{n,k} from a window of iterates.

    Args:
        window: Iterates x_n .. x_{n+k+1}
        rank_tol: Relative rank cutoff for W_{k-1}; None uses the default

    Returns:
        ExtrapolationResult with s_nk, gamma, xi and the minimized residual

    Raises:
        DegenerateWindowError: If W_{k-1} vanishes while u_n does not
    """
    diffs = build_differences(window)
    k = window.k
    x_n = window.iterate(0)
    u_n = diffs.u_n
    threshold = _zero_threshold(window)

    if np.linalg.norm(diffs.w) <= threshold:
        if np.linalg.norm(u_n) <= threshold:
            logger.debug(f"Window at n={window.n} is stationary; returning x_n")
            gamma = np.zeros(k + 1)
            gamma[0] = 1.0
            return ExtrapolationResult(
                s_nk=x_n.copy(),
                gamma=gamma,
                xi=np.zeros(k),
                residual_norm=float(np.linalg.norm(u_n)),
                gamma_abs_sum=1.0,
                n=window.n,
                k=k,
                dimension=window.dimension,
                numerical_rank=0,
                converged=True,
            )
        raise DegenerateWindowError(
            f"second differences vanish at n={window.n} while ||u_n|| = "
            f"{np.linalg.norm(u_n):.3e}"
        )

    factors = svd(diffs.w, rank_tol)
    xi = -min_norm_lsq(diffs.w, u_n, factors=factors)
    s_nk = x_n + diffs.u[:, :k] @ xi
    gamma = gamma_from_xi(xi)
    residual = float(np.linalg.norm(u_n + diffs.w @ xi))

    rank_deficient = factors.rank < k
    if rank_deficient:
        logger.debug(f"W has numerical rank {factors.rank} < k={k} at n={window.n}")

    return ExtrapolationResult(
        s_nk=s_nk,
        gamma=gamma,
        xi=xi,
        residual_norm=residual,
        gamma_abs_sum=float(np.abs(gamma).sum()),
        n=window.n,
        k=k,
        dimension=window.dimension,
        numerical_rank=factors.rank,
        rank_deficient=rank_deficient,
    )


def gamma_direct(u_k: ArrayLike) -> np.ndarray:
    """
    Minimize ||U_k gamma|| subject to sum(gamma) = 1 through the KKT system.

    Used as an oracle for extrapolate. The KKT matrix is solved in the
    minimum-norm least-squares sense so repeated columns are handled.
    """
    u = as_dense(u_k, "U_k")
    m = u.shape[1]
    gamma0 = np.zeros(m)
    gamma0[0] = 1.0
    if m == 1 or not np.any(u):
        return gamma0

    kkt = np.zeros((m + 1, m + 1))
    kkt[:m, :m] = 2.0 * (u.T @ u)
    kkt[:m, m] = 1.0
    kkt[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    try:
        solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError("KKT solve for gamma did not converge") from exc
    return solution[:m]
