import numpy as np
import pytest

from oracles import binary_entropy
from weakchan.channel import ChannelSpec, LetterEnsemble, LetterOperator, weak_mutual_information
from weakchan.eavesdrop import holevo_chi, intercept_ensemble, plus_minus_ensemble, tradeoff_sweep
from weakchan.errors import DimensionMismatch, InvalidArgs
from weakchan.linalg import DensityMatrix, random_density

OP01 = LetterOperator([0.0, 1.0])


def analytic_chi_after(sigma):
    g = np.exp(-1 / (8 * sigma**2))
    return 1 - binary_entropy((1 + g) / 2)


class TestHolevo:
    def test_orthogonal_eigenstates(self):
        assert holevo_chi(LetterEnsemble.eigenstates([0.5, 0.5])) == pytest.approx(1.0, abs=1e-12)

    def test_identical_letters(self, rng):
        rho = random_density(3, rng)
        assert holevo_chi(LetterEnsemble([0.2, 0.8], (rho, rho))) == pytest.approx(0.0, abs=1e-9)

    def test_plus_minus(self):
        assert holevo_chi(plus_minus_ensemble()) == pytest.approx(1.0, abs=1e-12)

    def test_bounded_by_letter_entropy(self, rng):
        for _ in range(20):
            p = rng.dirichlet(np.ones(3))
            ens = LetterEnsemble(p, tuple(random_density(3, rng) for _ in range(3)))
            chi = holevo_chi(ens)
            assert 0 <= chi <= -np.sum(p * np.log2(p)) + 1e-9


class TestIntercept:
    def test_diagonal_letters_unchanged(self):
        ens = LetterEnsemble([0.4, 0.6], (DensityMatrix.diagonal([0.9, 0.1]), DensityMatrix.diagonal([0.2, 0.8])))
        out = intercept_ensemble(ens, ChannelSpec(OP01, ChannelSpec.from_values([0, 1], 0.3).needle))
        for a, b in zip(ens.states, out.states):
            assert np.array_equal(a.matrix, b.matrix)

    def test_plus_minus_damping(self):
        out = intercept_ensemble(plus_minus_ensemble(), ChannelSpec.from_values([0, 1], 1.0))
        g = np.exp(-1 / 8)
        assert out.states[0].matrix[0, 1].real == pytest.approx(0.5 * g, abs=1e-15)
        assert out.states[1].matrix[0, 1].real == pytest.approx(-0.5 * g, abs=1e-15)

    def test_huge_sigma_is_identity(self):
        ens = plus_minus_ensemble()
        out = intercept_ensemble(ens, ChannelSpec.from_values([0, 1], 1e6))
        for a, b in zip(ens.states, out.states):
            assert np.max(np.abs(a.matrix - b.matrix)) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            intercept_ensemble(plus_minus_ensemble(), ChannelSpec.from_values([0, 1, 2], 1.0))


class TestSweep:
    GRID = [0.5, 1.0, 2.0, 4.0]

    def test_analytic_curve(self):
        pts = tradeoff_sweep(plus_minus_ensemble(), OP01, self.GRID)
        for pt in pts:
            assert pt.chi_after_bits == pytest.approx(analytic_chi_after(pt.sigma_eve), abs=1e-8)
            assert pt.chi_before_bits == pytest.approx(1.0, abs=1e-12)
        # 1 - H_b((1 + e^{-1/8}) / 2)
        assert pts[1].chi_after_bits == pytest.approx(0.677531031453, abs=1e-9)

    def test_monotone(self):
        pts = tradeoff_sweep(plus_minus_ensemble(), OP01, np.geomspace(0.1, 20, 15))
        for a, b in zip(pts, pts[1:]):
            assert b.chi_after_bits >= a.chi_after_bits - 1e-9
            assert b.eve_info_bits <= a.eve_info_bits + 1e-9

    def test_diagonal_letters(self):
        ens = LetterEnsemble.eigenstates([0.5, 0.5])
        for pt in tradeoff_sweep(ens, OP01, self.GRID):
            assert pt.chi_after_bits == pt.chi_before_bits
        assert tradeoff_sweep(ens, OP01, [OP01.min_gap()])[0].eve_info_bits > 1e-6

    def test_eve_info_matches_weak_mi(self):
        ens = LetterEnsemble.eigenstates([0.3, 0.7])
        pt = tradeoff_sweep(ens, OP01, [0.8])[0]
        assert pt.eve_info_bits == weak_mutual_information(ens, ChannelSpec.from_values([0, 1], 0.8))

    def test_no_free_lunch(self, rng):
        op = LetterOperator([-1.0, 0.2, 2.0])
        for _ in range(10):
            k = int(rng.integers(2, 5))
            ens = LetterEnsemble(rng.dirichlet(np.ones(k)), tuple(random_density(3, rng) for _ in range(k)))
            for pt in tradeoff_sweep(ens, op, [0.3, 1.0, 3.0]):
                assert pt.chi_after_bits <= pt.chi_before_bits + 1e-9
                assert pt.eve_info_bits >= -1e-9

    def test_grid_validation(self):
        with pytest.raises(InvalidArgs):
            tradeoff_sweep(plus_minus_ensemble(), OP01, [])
        with pytest.raises(InvalidArgs):
            tradeoff_sweep(plus_minus_ensemble(), OP01, [2.0, 1.0])
