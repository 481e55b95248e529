import numpy as np
import pytest

from conftest import random_ginibre_states, random_unitary
from weakchan.errors import NotHermitian, NotPSD, TraceNotOne
from weakchan.linalg import (DensityMatrix, hermitian_eig, random_density,
                             validate_density, von_neumann_entropy)


class TestValidateDensity:
    def test_maximally_mixed(self):
        rho = validate_density(np.eye(2) / 2)
        assert rho.dim == 2

    def test_trace_not_one(self):
        with pytest.raises(TraceNotOne, match="trace"):
            validate_density(np.diag([0.9, 0.0]))

    def test_plus_projector(self):
        validate_density(0.5 * np.array([[1, 1], [1, 1]]))

    def test_not_hermitian_reports_residual(self):
        with pytest.raises(NotHermitian, match=r"max\|M - M\^dagger\| = 1\.000e-01"):
            validate_density(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_not_psd(self):
        with pytest.raises(NotPSD, match="minimum eigenvalue"):
            validate_density(np.array([[1.2, 0.0], [0.0, -0.2]]))

    def test_immutable(self):
        rho = DensityMatrix(np.eye(2) / 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestHermitianEig:
    def test_diagonal(self):
        sp = hermitian_eig(np.diag([0.3, 0.7]))
        np.testing.assert_allclose(sp.eigenvalues, [0.3, 0.7], atol=1e-15)

    def test_damped_plus_state(self):
        # characteristic polynomial of (1/2)[[1, g], [g, 1]]: (1/2 - l)^2 = g^2/4
        g = np.exp(-1 / 8)
        sp = hermitian_eig(0.5 * np.array([[1, g], [g, 1]]))
        np.testing.assert_allclose(sp.eigenvalues, [(1 - g) / 2, (1 + g) / 2], atol=1e-14)

    def test_degenerate(self):
        np.testing.assert_allclose(hermitian_eig(np.eye(2) / 2).eigenvalues, [0.5, 0.5])

    def test_complex_entries(self):
        m = np.array([[2.0, 1 - 1j], [1 + 1j, 3.0]])
        # trace 5, det 4: roots of l^2 - 5 l + 4
        np.testing.assert_allclose(hermitian_eig(m).eigenvalues, [1.0, 4.0], atol=1e-13)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0, 1], [0, 0]]))

    @pytest.mark.parametrize("d", range(1, 9))
    def test_reconstruction_and_unitarity(self, d, rng):
        for _ in range(10):
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            m = g + g.conj().T
            sp = hermitian_eig(m)
            v, lam = sp.eigenvectors, sp.eigenvalues
            assert np.all(np.diff(lam) >= 0)
            assert np.max(np.abs(v @ np.diag(lam) @ v.conj().T - m)) <= 1e-8
            assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-8

    def test_deterministic(self, rng):
        g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        m = g + g.conj().T
        a, b = hermitian_eig(m), hermitian_eig(m.copy())
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)

    def test_matches_lapack(self, rng):
        g = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
        m = g + g.conj().T
        np.testing.assert_allclose(hermitian_eig(m).eigenvalues, np.linalg.eigvalsh(m), atol=1e-10)


class TestVonNeumannEntropy:
    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)

    def test_pure(self, rng):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert von_neumann_entropy(DensityMatrix.pure(psi)) == pytest.approx(0.0, abs=1e-10)

    def test_diag(self):
        # -0.25 log2 0.25 - 0.75 log2 0.75
        assert von_neumann_entropy(np.diag([0.25, 0.75])) == pytest.approx(0.811278124459, abs=1e-11)

    def test_bounds_random(self, rng):
        for rho in random_ginibre_states(rng, 100, dmax=6):
            s = von_neumann_entropy(rho)
            assert 0.0 <= s <= np.log2(rho.dim) + 1e-9

    def test_unitary_invariance(self, rng):
        for _ in range(30):
            d = int(rng.integers(2, 7))
            rho = random_density(d, rng)
            u = hermitian_eig(random_density(d, rng).matrix).eigenvectors
            assert von_neumann_entropy(u @ rho.matrix @ u.conj().T) == pytest.approx(
                von_neumann_entropy(rho), abs=1e-8)
            w = random_unitary(rng, d)
            assert von_neumann_entropy(w @ rho.matrix @ w.conj().T) == pytest.approx(
                von_neumann_entropy(rho), abs=1e-8)
