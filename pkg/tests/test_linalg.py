import numpy as np
import pytest

from momenta import linalg
from momenta.errors import DomainError, ShapeError


def quad_eig2(a, b, c):
    """Eigenvalues of [[a, b], [b, c]] by the quadratic formula (oracle)."""
    d = np.sqrt((a - c) ** 2 + 4.0 * b * b)
    return (a + c - d) / 2.0, (a + c + d) / 2.0


class TestHermitianEig:
    def test_example_3x3_eigenvalues(self, example_3x3):
        spec = linalg.hermitian_eig(example_3x3)
        np.testing.assert_allclose(spec.eigenvalues, [-12.0, 0.0, 12.0],
                                   atol=1e-10)

    def test_identity(self):
        spec = linalg.hermitian_eig(np.eye(4))
        np.testing.assert_allclose(spec.eigenvalues, np.ones(4), atol=1e-14)

    def test_off_diagonal_pair(self):
        # characteristic polynomial x^2 - 1 = 0
        spec = linalg.hermitian_eig([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_allclose(spec.eigenvalues, [-1.0, 1.0], atol=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 17])
    def test_reconstruction_and_orthonormality(self, n):
        for seed in range(4):
            a = linalg.random_hermitian(n, 100 * n + seed)
            spec = linalg.hermitian_eig(a)
            scale = max(1.0, linalg.frobenius(a))
            assert linalg.frobenius(spec.reconstruct() - a) <= 1e-10 * scale
            gram = spec.eigenvectors.conj().T @ spec.eigenvectors
            assert linalg.frobenius(gram - np.eye(n)) <= 1e-12
            assert np.all(np.diff(spec.eigenvalues) >= 0.0)

    def test_matches_reference_solver(self):
        # cross-check against an independent LAPACK-backed eigensolver
        for n in (2, 4, 7, 12, 25):
            a = linalg.random_hermitian(n, n)
            ours = linalg.hermitian_eig(a).eigenvalues
            ref = np.linalg.eigvalsh(a)
            np.testing.assert_allclose(ours, ref, atol=1e-11 * max(1.0, np.abs(ref).max()))

    def test_eigenvector_equation(self):
        a = linalg.random_hermitian(6, 7)
        spec = linalg.hermitian_eig(a)
        for lam, v in zip(spec.eigenvalues, spec.eigenvectors.T):
            assert np.linalg.norm(a @ v - lam * v) <= 1e-11 * max(1.0, abs(lam))

    def test_rejects_non_square(self):
        with pytest.raises(ShapeError):
            linalg.hermitian_eig(np.ones((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            linalg.hermitian_eig([[np.nan, 0.0], [0.0, 1.0]])

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            linalg.hermitian_eig([[0.0, 1.0], [0.0, 0.0]])


class TestSymmetrize:
    def test_absorbs_roundoff(self):
        a = linalg.random_hermitian(4, 0)
        noisy = a + 1e-12 * linalg.frobenius(a) * np.array(
            [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        h = linalg.symmetrize(noisy)
        assert linalg.frobenius(h - h.conj().T) == 0.0

    def test_rejects_beyond_tolerance(self):
        a = np.array([[1.0, 1.0], [0.0, 1.0]])
        with pytest.raises(DomainError):
            linalg.symmetrize(a)

    def test_zero_matrix_passes(self):
        np.testing.assert_array_equal(linalg.symmetrize(np.zeros((3, 3))),
                                      np.zeros((3, 3)))


class TestIsPsd:
    def test_identity(self):
        verdict = linalg.is_psd(np.eye(3))
        assert verdict.passed
        assert verdict.min_eigenvalue == pytest.approx(1.0, abs=1e-14)

    def test_indefinite_2x2(self):
        lo, hi = quad_eig2(1.0, 2.0, 1.0)
        verdict = linalg.is_psd([[1.0, 2.0], [2.0, 1.0]])
        assert not verdict.passed
        assert verdict.min_eigenvalue == pytest.approx(lo, abs=1e-12)
        assert lo == pytest.approx(-1.0)

    def test_moment_block_of_two_point_spectrum(self):
        # 2x2 moment matrix of diag(1, 2) under the normalized trace
        block = np.array([[1.0, 1.5], [1.5, 2.5]])
        lo, _ = quad_eig2(1.0, 1.5, 2.5)
        verdict = linalg.is_psd(block)
        assert verdict.passed
        assert verdict.min_eigenvalue == pytest.approx(lo, abs=1e-12)
        assert lo == pytest.approx(0.07294901687515765, abs=1e-12)
        assert np.linalg.det(block) == pytest.approx(0.25)

    def test_gram_matrices_pass(self):
        for seed in range(10):
            v = linalg.is_psd(linalg.random_psd(5, seed))
            assert v.passed

    def test_scale_floor(self):
        verdict = linalg.is_psd(np.zeros((2, 2)))
        assert verdict.passed
        assert verdict.scale == 1.0

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            linalg.is_psd([[1.0, 5.0], [0.0, 1.0]])

    def test_requires_positive_tol(self):
        with pytest.raises(ValueError):
            linalg.is_psd(np.eye(2), tol=0.0)


class TestKron:
    def test_identity_factor_is_block_diagonal(self):
        b = np.array([[1.0, 2.0], [2.0, 5.0]])
        out = linalg.kron(np.eye(2), b)
        expected = np.zeros((4, 4))
        expected[:2, :2] = b
        expected[2:, 2:] = b
        np.testing.assert_array_equal(out, expected)

    def test_scalar_factor(self):
        b = linalg.random_hermitian(3, 1)
        np.testing.assert_allclose(linalg.kron(np.array([[2.0]]), b), 2.0 * b)

    def test_ones_times_identity(self):
        out = linalg.kron(np.ones((2, 2)), np.eye(2))
        expected = np.array([
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
        ], dtype=float)
        np.testing.assert_array_equal(out.real, expected)

    def test_psd_factors_give_psd(self):
        for seed in range(5):
            a = linalg.random_psd(2, seed)
            b = linalg.random_psd(3, seed + 50)
            assert linalg.is_psd(linalg.kron(a, b)).passed

    def test_dimension_cap(self):
        with pytest.raises(ShapeError):
            linalg.kron(np.eye(70), np.eye(70))
        # configurable
        out = linalg.kron(np.eye(70), np.eye(70), dim_cap=4900)
        assert out.shape == (4900, 4900)


class TestHadamard:
    def test_ones_identity(self):
        a = linalg.random_hermitian(3, 2)
        np.testing.assert_array_equal(linalg.hadamard(a, np.ones((3, 3))), a)

    def test_diagonal_mask(self):
        a = linalg.random_hermitian(3, 3)
        np.testing.assert_array_equal(linalg.hadamard(a, np.eye(3)),
                                      np.diag(np.diag(a)))

    def test_entrywise_product(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0]])
        b = np.array([[1.0, -1.0], [-1.0, 1.0]])
        np.testing.assert_array_equal(
            linalg.hadamard(a, b).real, np.array([[1.0, -2.0], [-2.0, 4.0]]))

    def test_schur_product_of_psd_is_psd(self):
        for seed in range(5):
            a = linalg.random_psd(4, seed)
            b = linalg.random_psd(4, seed + 100)
            assert linalg.is_psd(linalg.hadamard(a, b)).passed

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            linalg.hadamard(np.eye(2), np.eye(3))


class TestMatrixFunctions:
    def test_log_identity_is_zero(self):
        np.testing.assert_allclose(linalg.matrix_log(np.eye(3)),
                                   np.zeros((3, 3)), atol=1e-14)

    def test_log_diagonal(self):
        out = linalg.matrix_log(np.diag([1.0, np.e]))
        np.testing.assert_allclose(np.diag(out).real, [0.0, 1.0], atol=1e-14)

    def test_square_trace_of_example(self, example_3x3):
        # trace of A^2 equals the squared Frobenius norm: 144 + 0 + 144
        sq = linalg.matrix_power(example_3x3, 2)
        assert np.trace(sq).real == pytest.approx(288.0, rel=1e-12)

    def test_power_addition(self):
        a = linalg.random_hermitian(4, 11)
        pd = a + (abs(linalg.hermitian_eig(a).min) + 0.3) * np.eye(4)
        for p, q in [(0, 3), (2, 2), (1, 4)]:
            left = linalg.matrix_power(a, p) @ linalg.matrix_power(a, q)
            right = linalg.matrix_power(a, p + q)
            assert linalg.frobenius(left - right) <= 1e-9 * max(
                1.0, linalg.frobenius(right))
        for p, q in [(-1, 2), (-2, -1), (3, -2)]:
            left = linalg.matrix_power(pd, p) @ linalg.matrix_power(pd, q)
            right = linalg.matrix_power(pd, p + q)
            assert linalg.frobenius(left - right) <= 1e-9 * max(
                1.0, linalg.frobenius(right))

    def test_log_requires_positive_definite(self):
        with pytest.raises(DomainError):
            linalg.matrix_log(np.diag([1.0, -1.0]))
        with pytest.raises(DomainError):
            linalg.matrix_log(np.diag([1.0, 0.0]))

    def test_negative_power_requires_positive_definite(self):
        with pytest.raises(DomainError):
            linalg.matrix_power(np.diag([1.0, -2.0]), -1)

    def test_matrix_function_with_callable(self):
        a = np.diag([1.0, 4.0])
        out = linalg.matrix_function(a, np.sqrt)
        np.testing.assert_allclose(np.diag(out).real, [1.0, 2.0], atol=1e-14)

    def test_matrix_function_rejects_bad_values(self):
        with pytest.raises(DomainError):
            linalg.matrix_function(np.diag([-1.0, 1.0]), np.log)


class TestRandomGenerators:
    def test_unitary_single_element(self):
        u = linalg.random_unitary(1, 5)
        assert abs(abs(u[0, 0]) - 1.0) <= 1e-14

    def test_unitary_orthonormal(self):
        u = linalg.random_unitary(4, 42)
        assert linalg.frobenius(u.conj().T @ u - np.eye(4)) <= 1e-12

    def test_unitary_deterministic(self):
        np.testing.assert_array_equal(linalg.random_unitary(4, 42),
                                      linalg.random_unitary(4, 42))

    def test_unitary_rejects_empty(self):
        with pytest.raises(ShapeError):
            linalg.random_unitary(0, 1)

    def test_hermitian_with_spectrum(self):
        lam = [-1.0, 0.5, 2.0]
        a = linalg.hermitian_with_spectrum(lam, 9)
        np.testing.assert_allclose(linalg.hermitian_eig(a).eigenvalues, lam,
                                   atol=1e-12)

    def test_normal_matrix_is_normal(self):
        a = linalg.random_normal_matrix(5, 3)
        comm = a.conj().T @ a - a @ a.conj().T
        assert linalg.frobenius(comm) <= 1e-12 * linalg.frobenius(a) ** 2
