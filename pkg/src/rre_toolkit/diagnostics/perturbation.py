"""
Companion linear sequence and the split of s_{n,k} into linear and
second-order parts. Everything here needs the solution s and F = F(s).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..errors import DimensionMismatchError
from ..extrapolation.rre import IterateWindow, build_differences, extrapolate
from ..linalg.core import as_dense, as_vector, operator_norm, pseudoinverse, svd
from ..linalg.perturbation import check_inverse_difference_bound
from ..models.diagnostics import PerturbationReport

logger = logging.getLogger(__name__)


def companion_iterates(x_n: ArrayLike, F: ArrayLike, s: ArrayLike, count: int) -> list[np.ndarray]:
    """x~_0 = x_n and x~_{m+1} = s + F (x~_m - s) for m < count."""
    start = as_vector(x_n, "x_n")
    mat = as_dense(F, "F")
    sol = as_vector(s, "s")
    if mat.shape != (start.shape[0], start.shape[0]) or sol.shape != start.shape:
        raise DimensionMismatchError(
            f"x_n {start.shape}, F {mat.shape} and s {sol.shape} do not conform"
        )
    iterates = [start]
    for _ in range(count):
        iterates.append(sol + mat @ (iterates[-1] - sol))
    return iterates


def companion_window(window: IterateWindow, F: ArrayLike, s: ArrayLike) -> IterateWindow:
    """Window of the companion sequence started at the window's x_n."""
    iterates = companion_iterates(window.iterate(0), F, s, window.k + 1)
    return IterateWindow(n=window.n, vectors=np.column_stack(iterates))


@dataclass(frozen=True)
class ErrorSplit:
    """s_{n,k} = s~_{n,k} + s^_{n,k} with the pieces it is built from."""

    s_nk: np.ndarray
    s_tilde: np.ndarray
    s_check: np.ndarray
    w_tilde: np.ndarray
    w_check: np.ndarray
    h: np.ndarray

    @property
    def mismatch(self) -> float:
        """||(s_nk - s~) - s^||."""
        return float(np.linalg.norm(self.s_nk - self.s_tilde - self.s_check))


def error_split(
    window: IterateWindow, F: ArrayLike, s: ArrayLike, rank_tol: Optional[float] = None
) -> ErrorSplit:
    """
    Second-order part s^ = -U~ W~+ u^_n - (U H + U^ W~+) u_n.

    Tilde quantities come from the companion sequence, checked quantities are
    actual minus companion, and H = W+ - W~+.
    """
    linear = companion_window(window, F, s)
    actual = build_differences(window)
    companion = build_differences(linear)
    k = window.k

    u_k = actual.u[:, :k]
    u_tilde = companion.u[:, :k]
    u_check = u_k - u_tilde
    w_pinv = pseudoinverse(actual.w, rank_tol)
    w_tilde_pinv = pseudoinverse(companion.w, rank_tol)
    h = w_pinv - w_tilde_pinv
    u_n = actual.u_n
    u_n_check = u_n - companion.u_n

    s_check = -u_tilde @ (w_tilde_pinv @ u_n_check) - (u_k @ h + u_check @ w_tilde_pinv) @ u_n
    return ErrorSplit(
        s_nk=extrapolate(window, rank_tol).s_nk,
        s_tilde=extrapolate(linear, rank_tol).s_nk,
        s_check=s_check,
        w_tilde=companion.w,
        w_check=actual.w - companion.w,
        h=h,
    )


def remainder_ratios(window: IterateWindow, F: ArrayLike, s: ArrayLike) -> np.ndarray:
    """||x_{n+i} - x~_{n+i}|| / ||eps_n||^2 for i = 0..k+1."""
    sol = as_vector(s, "s")
    eps_norm = float(np.linalg.norm(window.iterate(0) - sol))
    if eps_norm == 0.0:
        return np.zeros(window.k + 2)
    companion = companion_window(window, F, sol)
    remainders = np.linalg.norm(window.vectors - companion.vectors, axis=0)
    return remainders / eps_norm**2


def perturbation_quantities(
    window: IterateWindow, F: ArrayLike, s: ArrayLike, rank_tol: Optional[float] = None
) -> PerturbationReport:
    """
    Delta = ||W~+|| ||W^||, ||H|| and the bound sqrt(2) Delta/(1-Delta) ||W~+||.

    Rank deficiency of W~ is reported, not raised; the quantities are then
    computed with the pseudoinverse regardless.
    """
    split = error_split(window, F, s, rank_tol)
    companion_rank = svd(split.w_tilde, rank_tol).rank
    delta = operator_norm(pseudoinverse(split.w_tilde, rank_tol)) * operator_norm(split.w_check)
    check = check_inverse_difference_bound(split.w_tilde, split.w_check)
    if companion_rank < window.k:
        logger.warning(f"companion W has numerical rank {companion_rank} < k={window.k}")

    return PerturbationReport(
        n=window.n,
        k=window.k,
        delta=delta,
        h_norm=operator_norm(split.h),
        h_bound=check.rhs,
        delta_below_one=delta < 1.0,
        bound_holds=check.holds,
        companion_rank=companion_rank,
        rank_deficient=companion_rank < window.k,
        s_nk=split.s_nk,
        s_tilde=split.s_tilde,
        s_check=split.s_check,
        split_mismatch=split.mismatch,
    )
