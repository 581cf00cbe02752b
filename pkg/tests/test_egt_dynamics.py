"""Tests for fixation probabilities and the embedded chain."""

import math

import numpy as np
import pytest

from trustgame.egt.dynamics import build_transition_matrix, fixation_probability
from trustgame.exceptions import ParamsError
from trustgame.models.egt import EgtConfig
from trustgame.models.game import GameParams, TrustMode


class TestFixationProbability:
    """Test the closed-form fixation probability."""

    def test_neutral_drift(self):
        """Zero payoff difference fixes with probability 1/Z."""
        assert fixation_probability(0.0, 10, 1.0) == pytest.approx(0.1)
        assert fixation_probability(3.0, 25, 0.0) == pytest.approx(1 / 25)

    def test_closed_form(self):
        """Matches (1 - e^{-beta d}) / (1 - e^{-Z beta d}) at moderate values."""
        for delta in (-1.0, -0.3, 0.5, 2.0):
            expected = (1 - math.exp(-delta)) / (1 - math.exp(-10 * delta))
            assert fixation_probability(delta, 10, 1.0) == pytest.approx(expected, rel=1e-10)

    def test_disadvantageous_mutant(self):
        """A mutant one unit worse in a population of 10 almost never fixes."""
        assert fixation_probability(-1.0, 10, 1.0) == pytest.approx(7.80e-5, rel=1e-2)

    @pytest.mark.parametrize("delta", [0.1, 0.7, 1.5, 4.0])
    def test_detailed_balance_ratio(self, delta):
        """rho(d) / rho(-d) = exp(beta (Z - 1) d)."""
        Z, beta = 30, 0.5
        ratio = fixation_probability(delta, Z, beta) / fixation_probability(-delta, Z, beta)
        assert ratio == pytest.approx(math.exp(beta * (Z - 1) * delta), rel=1e-9)

    def test_extreme_values_do_not_overflow(self):
        """Huge advantages saturate at 1, huge disadvantages at 0."""
        assert fixation_probability(50.0, 100, 10.0) == pytest.approx(1.0)
        assert fixation_probability(-50.0, 100, 10.0) == 0.0

    def test_bounds(self):
        """Always a probability, increasing in delta."""
        deltas = np.linspace(-5, 5, 41)
        values = [fixation_probability(float(d), 50, 1.0) for d in deltas]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert values == sorted(values)

    def test_invalid_population(self):
        """Z below 2 is rejected."""
        with pytest.raises(ParamsError):
            fixation_probability(1.0, 1, 1.0)

    def test_negative_beta(self):
        """Negative selection intensity is rejected."""
        with pytest.raises(ParamsError):
            fixation_probability(1.0, 10, -0.5)


class TestTransitionMatrix:
    """Test the embedded chain."""

    @pytest.mark.parametrize("mode", list(TrustMode))
    def test_row_stochastic(self, mode):
        """Rows are non-negative and sum to 1."""
        matrix = build_transition_matrix(EgtConfig(mode=mode))
        assert matrix.shape == (8, 8)
        assert np.all(matrix >= 0)
        np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-12)

    def test_only_single_role_moves(self):
        """Each state reaches exactly three others, those differing in one role."""
        matrix = build_transition_matrix(EgtConfig(beta=0.0, Z=10))
        for i in range(8):
            off_diagonal = [j for j in range(8) if j != i and matrix[i, j] > 0]
            assert len(off_diagonal) == 3
            # Table order is binary: user bit 4, developer bit 2, regulator bit 1
            assert sorted(i ^ j for j in off_diagonal) == [1, 2, 4]

    def test_neutral_entries(self):
        """Under neutral drift each move has probability 1/(3Z)."""
        matrix = build_transition_matrix(EgtConfig(beta=0.0, Z=10))
        assert matrix[0, 4] == pytest.approx(1 / 30)
        assert matrix[0, 0] == pytest.approx(1 - 3 / 30)

    def test_entry_uses_role_payoff_difference(self, default_params):
        """TCC to TDC uses the developer's gain 2.5 - 3.5 at unconditional trust."""
        config = EgtConfig(Z=10, beta=1.0, mode=TrustMode.UNCONDITIONAL, params=default_params)
        matrix = build_transition_matrix(config)
        assert matrix[0, 2] == pytest.approx(fixation_probability(-1.0, 10, 1.0) / 3)

    def test_params_enter_the_matrix(self):
        """Changing the regulation cost changes the chain."""
        low = build_transition_matrix(EgtConfig(params=GameParams(c_R=0.5)))
        high = build_transition_matrix(EgtConfig(params=GameParams(c_R=5.0)))
        assert not np.allclose(low, high)
