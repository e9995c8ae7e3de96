"""Tests for the dense SVD, pseudoinverse and least-squares kernels."""

import numpy as np
import pytest

from rre_toolkit.errors import ArgumentError, DimensionMismatchError, ZeroRankError
from rre_toolkit.linalg import (
    full_column_rank_inverse,
    full_row_rank_inverse,
    min_norm_lsq,
    operator_norm,
    penrose_residuals,
    pseudoinverse,
    smallest_nonzero_singular,
    svd,
)


def controlled_matrix(rng, rows, cols, rank):
    """rows x cols matrix of exact rank `rank` with singular values in [1, 10]."""
    left, _ = np.linalg.qr(rng.standard_normal((rows, rows)))
    right, _ = np.linalg.qr(rng.standard_normal((cols, cols)))
    values = rng.uniform(1.0, 10.0, rank)
    return (left[:, :rank] * values) @ right[:, :rank].T


class TestSvd:
    def test_identity(self):
        factors = svd(np.eye(3))
        np.testing.assert_allclose(factors.singular_values, [1.0, 1.0, 1.0])
        assert factors.rank == 3

    def test_diagonal_sorted(self):
        factors = svd(np.diag([1.0, 3.0, 2.0]))
        np.testing.assert_allclose(factors.singular_values, [3.0, 2.0, 1.0])

    def test_matches_gram_eigenvalues(self, rng):
        a = rng.standard_normal((5, 3))
        expected = np.sqrt(np.sort(np.linalg.eigvalsh(a.T @ a))[::-1])
        np.testing.assert_allclose(svd(a).singular_values, expected, atol=1e-10)

    def test_reconstructs(self, rng):
        a = rng.standard_normal((4, 6))
        np.testing.assert_allclose(svd(a).reconstruct(), a, atol=1e-12)

    def test_zero_matrix_has_rank_zero(self):
        assert svd(np.zeros((3, 2))).rank == 0

    def test_rank_cutoff(self):
        assert svd(np.diag([1.0, 1e-9]), rank_tol=1e-6).rank == 1
        assert svd(np.diag([1.0, 1e-9])).rank == 2

    def test_rejects_non_finite(self):
        with pytest.raises(ArgumentError):
            svd(np.array([[1.0, np.nan]]))

    def test_rejects_vector(self):
        with pytest.raises(ArgumentError):
            svd(np.ones(3))

    def test_rejects_negative_tolerance(self):
        with pytest.raises(ArgumentError):
            svd(np.eye(2), rank_tol=-1.0)


class TestPseudoinverse:
    def test_identity(self):
        np.testing.assert_allclose(pseudoinverse(np.eye(3)), np.eye(3))

    def test_singular_diagonal(self):
        np.testing.assert_allclose(pseudoinverse(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))

    def test_zero_matrix_transposed_shape(self):
        result = pseudoinverse(np.zeros((2, 3)))
        assert result.shape == (3, 2)
        assert not np.any(result)

    def test_full_column_rank_formula(self, rng):
        a = rng.standard_normal((4, 2))
        np.testing.assert_allclose(pseudoinverse(a), full_column_rank_inverse(a), atol=1e-12)

    def test_full_row_rank_formula(self, rng):
        a = rng.standard_normal((2, 5))
        np.testing.assert_allclose(pseudoinverse(a), full_row_rank_inverse(a), atol=1e-12)

    def test_penrose_conditions_on_random_matrices(self, rng):
        for _ in range(200):
            rows, cols = rng.integers(1, 8, size=2)
            rank = int(rng.integers(1, min(rows, cols) + 1))
            a = controlled_matrix(rng, rows, cols, rank)
            a_pinv = pseudoinverse(a, rank_tol=1e-10)
            r1, r2, r3, r4 = penrose_residuals(a, a_pinv)
            assert r1 <= 1e-10 * operator_norm(a)
            assert r2 <= 1e-10 * operator_norm(a_pinv)
            assert r3 <= 1e-10
            assert r4 <= 1e-10

    def test_inverse_norm_is_reciprocal_smallest_singular(self, rng):
        a = rng.standard_normal((5, 2))
        assert operator_norm(pseudoinverse(a)) == pytest.approx(
            1.0 / smallest_nonzero_singular(a), rel=1e-12
        )


class TestMinNormLsq:
    def test_square_identity(self):
        np.testing.assert_allclose(min_norm_lsq(np.eye(2), [3.0, -1.0]), [3.0, -1.0])

    def test_overdetermined(self):
        np.testing.assert_allclose(min_norm_lsq([[1.0], [1.0]], [0.0, 2.0]), [1.0])

    def test_underdetermined_picks_minimum_norm(self):
        np.testing.assert_allclose(min_norm_lsq([[1.0, 1.0]], [2.0]), [1.0, 1.0])

    def test_matches_normal_equations(self, rng):
        a = rng.standard_normal((6, 3))
        b = rng.standard_normal(6)
        expected = np.linalg.solve(a.T @ a, a.T @ b)
        np.testing.assert_allclose(min_norm_lsq(a, b), expected, atol=1e-10)

    def test_zero_matrix_gives_zero(self):
        np.testing.assert_allclose(min_norm_lsq(np.zeros((2, 3)), [1.0, 1.0]), np.zeros(3))

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            min_norm_lsq(np.eye(3), [1.0, 2.0])


class TestSmallestNonzeroSingular:
    def test_diagonal(self):
        assert smallest_nonzero_singular(np.diag([5.0, 3.0])) == pytest.approx(3.0)

    def test_skips_values_below_cutoff(self):
        assert smallest_nonzero_singular(np.diag([5.0, 0.0]), rank_tol=1e-8) == pytest.approx(5.0)

    def test_zero_matrix(self):
        with pytest.raises(ZeroRankError):
            smallest_nonzero_singular(np.zeros((2, 2)))
