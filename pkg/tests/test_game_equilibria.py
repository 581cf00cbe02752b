"""Tests for pure Nash equilibria."""

import itertools
import math
import random

import pytest

from trustgame.game.equilibria import find_pure_nash, is_pure_nash, unilateral_deviations
from trustgame.game.payoffs import payoff
from trustgame.models.game import ActionProfile, Conduct, GameParams, Role, TrustMode, UserAction

CONDITIONAL = TrustMode.CONDITIONAL
UNCONDITIONAL = TrustMode.UNCONDITIONAL


def _codes(profiles: set[ActionProfile], mode: TrustMode) -> set[str]:
    return {p.code(mode) for p in profiles}


def _oracle(params: GameParams, mode: TrustMode) -> set[ActionProfile]:
    """Independent check: each role's payoff must be a best response in its column."""
    users = (UserAction.TRUST, UserAction.NO_TRUST)
    conducts = (Conduct.COMPLY, Conduct.DEFECT)
    table = {
        (a, b, c): payoff(ActionProfile(user=a, developer=b, regulator=c), params, mode)
        for a, b, c in itertools.product(users, conducts, conducts)
    }
    equilibria = set()
    for a, b, c in table:
        here = table[(a, b, c)]
        best_user = max(table[(x, b, c)].user for x in users)
        best_developer = max(table[(a, x, c)].developer for x in conducts)
        best_regulator = max(table[(a, b, x)].regulator for x in conducts)
        pairs = (
            (here.user, best_user),
            (here.developer, best_developer),
            (here.regulator, best_regulator),
        )
        if all(math.isclose(value, best, rel_tol=1e-9, abs_tol=1e-12) for value, best in pairs):
            equilibria.add(ActionProfile(user=a, developer=b, regulator=c))
    return equilibria


class TestUnilateralDeviations:
    """Test deviation enumeration."""

    def test_three_single_role_changes(self):
        """Each deviation flips exactly one role's action."""
        profile = ActionProfile.from_code("TCC")
        deviations = unilateral_deviations(profile)
        assert [role for role, _ in deviations] == [Role.USER, Role.DEVELOPER, Role.REGULATOR]
        assert [d.code(UNCONDITIONAL) for _, d in deviations] == ["NCC", "TDC", "TCD"]


class TestFindPureNash:
    """Test equilibrium search."""

    def test_defaults_conditional(self, default_params):
        """Weak equilibria at defaults with conditional trust."""
        assert _codes(find_pure_nash(default_params, CONDITIONAL), CONDITIONAL) == {
            "CTCC",
            "NDD",
        }

    def test_defaults_conditional_strict(self, default_params):
        """NDD is only weak: the user is indifferent to trusting a lenient regulator."""
        strict = find_pure_nash(default_params, CONDITIONAL, strict=True)
        assert _codes(strict, CONDITIONAL) == {"CTCC"}

    def test_defaults_unconditional(self, default_params):
        """Only universal defection survives without conditional trust."""
        assert _codes(find_pure_nash(default_params, UNCONDITIONAL), UNCONDITIONAL) == {"NDD"}

    def test_positive_epsilon_unconditional_has_none(self):
        """With epsilon = 0.2 the unconditional game has no pure equilibrium."""
        params = GameParams(epsilon=0.2)
        assert find_pure_nash(params, UNCONDITIONAL) == set()

    def test_strict_is_subset_of_weak(self, default_params):
        """Strict equilibria are also weak equilibria."""
        for mode in (CONDITIONAL, UNCONDITIONAL):
            weak = find_pure_nash(default_params, mode)
            assert find_pure_nash(default_params, mode, strict=True) <= weak

    @pytest.mark.parametrize("mode", [CONDITIONAL, UNCONDITIONAL])
    def test_matches_oracle_on_random_draws(self, mode):
        """Agrees with a best-response oracle on 1000 random parameter draws."""
        rng = random.Random(99)
        for _ in range(1000):
            params = GameParams(
                b_U=rng.choice([0.0, 1.0, 4.0, rng.uniform(0, 8)]),
                b_P=rng.uniform(0, 8),
                b_R=rng.uniform(0, 8),
                c_P=rng.choice([0.0, 0.5, rng.uniform(0, 4)]),
                c_R=rng.choice([0.0, 0.5, 5.0, rng.uniform(0, 6)]),
                u=rng.uniform(0, 4),
                v=rng.uniform(0, 2),
                b_fo=rng.choice([0.0, 2.0, rng.uniform(0, 6)]),
                epsilon=rng.uniform(-1, 1),
            )
            assert find_pure_nash(params, mode) == _oracle(params, mode)

    def test_is_pure_nash_single_profile(self, default_params):
        """is_pure_nash checks a single profile."""
        assert is_pure_nash(ActionProfile.from_code("CTCC"), default_params, CONDITIONAL)
        assert not is_pure_nash(ActionProfile.from_code("CTCD"), default_params, CONDITIONAL)


def _grid_params(rng: random.Random) -> GameParams:
    """Draws from a coarse grid, so that payoff ties are common."""
    grid = [0.0, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 4.0]
    return GameParams(
        b_U=rng.choice(grid),
        b_P=rng.choice(grid),
        b_R=rng.choice(grid),
        c_P=rng.choice(grid),
        c_R=rng.choice(grid),
        u=rng.choice(grid),
        v=rng.choice(grid),
        b_fo=rng.choice(grid),
        epsilon=rng.choice([-1.0, -0.1, 0.0, 0.2, 0.5]),
    )


class TestScaleInvariance:
    """Equilibria do not depend on the monetary unit."""

    @pytest.mark.parametrize("factor", [0.1, 0.3, 0.7, 1.1, 3.0])
    @pytest.mark.parametrize("strict", [False, True])
    def test_random_grid_draws(self, factor, strict):
        """Scaling every monetary field leaves the equilibrium set unchanged."""
        rng = random.Random(2024)
        for _ in range(2000):
            params = _grid_params(rng)
            scaled = params.scaled(factor)
            for mode in (CONDITIONAL, UNCONDITIONAL):
                assert find_pure_nash(params, mode, strict=strict) == find_pure_nash(
                    scaled, mode, strict=strict
                )

    @pytest.mark.parametrize(
        ("params", "mode", "factor"),
        [
            (
                GameParams(
                    b_U=0.3, b_P=0.3, b_R=0.5, c_P=0.1, c_R=4.0, u=0.0, v=0.0, b_fo=4.0,
                    epsilon=0.2,
                ),
                UNCONDITIONAL,
                0.1,
            ),
            (GameParams(b_R=1.0, c_R=1.5, v=0.2, b_fo=0.7), CONDITIONAL, 0.7),
            (GameParams(c_R=0.3, v=0.4, b_fo=0.7), CONDITIONAL, 0.1),
        ],
    )
    def test_exact_ties_survive_scaling(self, params, mode, factor):
        """Tied deviations stay tied after scaling by a non-power of two."""
        for strict in (False, True):
            assert find_pure_nash(params, mode, strict=strict) == find_pure_nash(
                params.scaled(factor), mode, strict=strict
            )

    def test_tie_is_weak_but_not_strict(self):
        """A regulator indifferent between enforcing and not keeps a weak equilibrium only."""
        # c_R + v == b_fo: enforcing against a defector pays exactly what leniency pays
        params = GameParams(epsilon=0.2, c_R=0.3, v=0.4, b_fo=0.7).scaled(0.1)
        for code in ("TDC", "TDD"):
            profile = ActionProfile.from_code(code)
            _, deviant = unilateral_deviations(profile)[2]
            here = payoff(profile, params, UNCONDITIONAL).regulator
            there = payoff(deviant, params, UNCONDITIONAL).regulator
            assert math.isclose(here, there, rel_tol=1e-9)
        weak = find_pure_nash(params, UNCONDITIONAL)
        strict = find_pure_nash(params, UNCONDITIONAL, strict=True)
        assert _codes(weak, UNCONDITIONAL) == {"TDD"}
        assert strict == set()
