"""Tests for rewards, individual choice, population models and q(ℓ, p)."""

from __future__ import annotations

import math
from unittest.mock import patch

import numpy as np
import pytest
from scipy import stats

from mixed_traffic_planner.choice import (
    BetaPopulation,
    ChoiceDistribution,
    ChoiceMode,
    ChoiceNoise,
    EmpiricalPopulation,
    Menu,
    MenuOption,
    PointMassPopulation,
    WeightVector,
    aggregate_q,
    choice_argmax,
    choice_intervals,
    choice_softmax,
    choose_many,
    dominated_set,
    option_at,
    reward,
    sample_user_choice,
)
from mixed_traffic_planner.errors import UnsupportedPrior

NOISY = ChoiceNoise(beta=0.5, mode=ChoiceMode.NOISY)
DETERMINISTIC = ChoiceNoise()

# r₀ − r₁ = 20 − 23θ, indifferent at θ = 20/23
TRADE_OFF = Menu.from_pairs([(50.0, 4.0), (70.0, 1.0)])


def random_menu(rng: np.random.Generator, n: int = 4) -> Menu:
    ell = np.sort(rng.uniform(30.0, 120.0, size=n))
    price = rng.uniform(0.0, 10.0, size=n)
    return Menu.from_vectors(ell, price)


# =============================================================================
# Models
# =============================================================================


class TestWeightVector:
    def test_omega_sums_to_one(self) -> None:
        w = WeightVector(0.3)
        assert w.omega_latency + w.omega_price == pytest.approx(1.0)

    @pytest.mark.parametrize("theta", [-0.1, 1.1])
    def test_rejects_out_of_range(self, theta: float) -> None:
        with pytest.raises(ValueError, match="theta"):
            WeightVector(theta)


class TestMenu:
    def test_rejects_negative_price(self) -> None:
        with pytest.raises(ValueError, match="price"):
            MenuOption(road_id=0, ell=50.0, price=-1.0)

    def test_from_pairs(self) -> None:
        assert TRADE_OFF.latencies == (50.0, 70.0)
        assert TRADE_OFF.prices == (4.0, 1.0)
        assert [o.road_id for o in TRADE_OFF.options] == [0, 1]


class TestChoiceDistribution:
    def test_rejects_unnormalized(self) -> None:
        with pytest.raises(ValueError, match="sum to 1"):
            ChoiceDistribution(q=(0.5, 0.4))

    def test_distance(self) -> None:
        a = ChoiceDistribution(q=(1.0, 0.0))
        b = ChoiceDistribution(q=(0.75, 0.25))
        assert a.distance(b) == pytest.approx(0.25)


class TestChoiceNoise:
    def test_noisy_requires_positive_beta(self) -> None:
        with pytest.raises(ValueError, match="beta"):
            ChoiceNoise(beta=0.0, mode=ChoiceMode.NOISY)


# =============================================================================
# Reward and dominance
# =============================================================================


class TestReward:
    @pytest.mark.parametrize(
        ("theta", "expected"),
        [(0.0, -50.0), (0.5, -26.5), (1.0, -3.0)],
    )
    def test_linear_reward(self, theta: float, expected: float) -> None:
        assert reward(WeightVector(theta), MenuOption(0, 50.0, 3.0)) == pytest.approx(expected)


class TestDominatedSet:
    def test_componentwise_dominance(self) -> None:
        assert dominated_set(Menu.from_pairs([(50.0, 4.0), (70.0, 5.0)])) == {1}

    def test_trade_off_frontier(self) -> None:
        assert dominated_set(TRADE_OFF) == frozenset()

    def test_duplicate_keeps_lowest_index(self) -> None:
        menu = Menu.from_pairs([(50.0, 4.0), (50.0, 4.0), (60.0, 2.0)])
        assert dominated_set(menu) == {1}


# =============================================================================
# Individual choice
# =============================================================================


class TestChoiceArgmax:
    def test_latency_only_user_takes_fastest(self) -> None:
        assert choice_argmax(WeightVector(0.0), TRADE_OFF) == 0

    def test_price_only_user_takes_cheapest(self) -> None:
        assert choice_argmax(WeightVector(1.0), TRADE_OFF) == 1

    def test_indifference_goes_to_lowest_index(self) -> None:
        assert choice_argmax(WeightVector(20.0 / 23.0), TRADE_OFF) == 0

    def test_scale_invariance(self) -> None:
        """Scaling both weights by c > 0 never changes the argmax."""
        rng = np.random.default_rng(3)
        for _ in range(200):
            menu = random_menu(rng)
            theta = rng.uniform()
            c = rng.uniform(0.1, 10.0)
            scaled = [-c * (1 - theta) * o.ell - c * theta * o.price for o in menu.options]
            assert int(np.argmax(scaled)) == choice_argmax(WeightVector(theta), menu)

    def test_dominated_options_never_win(self) -> None:
        rng = np.random.default_rng(11)
        for _ in range(300):
            menu = random_menu(rng, n=5)
            theta = rng.uniform(1e-6, 1 - 1e-6)
            assert choice_argmax(WeightVector(theta), menu) not in dominated_set(menu)


class TestChoiceSoftmax:
    def test_equal_rewards_split_evenly(self) -> None:
        menu = Menu.from_pairs([(50.0, 4.0), (50.0, 4.0)])
        q = choice_softmax(WeightVector(0.5), menu, NOISY)
        assert q.q == pytest.approx((0.5, 0.5))

    def test_logistic_of_reward_gap(self) -> None:
        """Rewards (−26.5, −36.5) at beta=10: logistic(1)."""
        menu = Menu.from_pairs([(50.0, 3.0), (70.0, 3.0)])
        q = choice_softmax(WeightVector(0.5), menu, ChoiceNoise(beta=10.0, mode=ChoiceMode.NOISY))
        assert q.q == pytest.approx((0.7311, 0.2689), abs=1e-4)

    def test_zero_temperature_limit(self) -> None:
        q = choice_softmax(WeightVector(0.5), TRADE_OFF, ChoiceNoise(beta=1e-6, mode=ChoiceMode.NOISY))
        assert q.q == pytest.approx((1.0, 0.0), abs=1e-6)


class TestChoiceIntervals:
    def test_trade_off(self) -> None:
        intervals = choice_intervals(TRADE_OFF)
        assert [(i.lo, i.hi, i.option) for i in intervals] == [
            (0.0, pytest.approx(20.0 / 23.0), 0),
            (pytest.approx(20.0 / 23.0), 1.0, 1),
        ]
        assert intervals[0].hi_closed
        assert not intervals[1].lo_closed

    def test_single_option(self) -> None:
        menu = Menu.from_pairs([(50.0, 4.0)])
        assert [(i.lo, i.hi, i.option) for i in choice_intervals(menu)] == [(0.0, 1.0, 0)]

    def test_dominated_option_never_appears(self) -> None:
        menu = Menu.from_pairs([(50.0, 4.0), (70.0, 5.0)])
        assert [(i.lo, i.hi, i.option) for i in choice_intervals(menu)] == [(0.0, 1.0, 0)]

    def test_agrees_with_argmax(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(50):
            menu = random_menu(rng)
            intervals = choice_intervals(menu)
            for theta in rng.uniform(size=20):
                assert option_at(intervals, theta) == choice_argmax(WeightVector(theta), menu)


class TestSampleUserChoice:
    def test_deterministic_mode_matches_argmax(self) -> None:
        for theta in np.linspace(0.0, 1.0, 41):
            w = WeightVector(float(theta))
            assert sample_user_choice(w, TRADE_OFF, DETERMINISTIC, rng_seed=0) == choice_argmax(w, TRADE_OFF)

    def test_noisy_equal_rewards_frequency(self) -> None:
        menu = Menu.from_pairs([(50.0, 4.0), (50.0, 4.0)])
        picks = [sample_user_choice(WeightVector(0.5), menu, NOISY, rng_seed=s) for s in range(10_000)]
        assert 0.48 <= picks.count(0) / len(picks) <= 0.52

    def test_fixed_seed_repeats(self) -> None:
        w = WeightVector(0.8)
        first = sample_user_choice(w, TRADE_OFF, NOISY, rng_seed=42)
        assert all(sample_user_choice(w, TRADE_OFF, NOISY, rng_seed=42) == first for _ in range(5))


class TestChooseMany:
    def test_deterministic_matches_argmax(self) -> None:
        thetas = np.linspace(0.0, 1.0, 101)
        picks = choose_many(thetas, TRADE_OFF, DETERMINISTIC, np.random.default_rng(0))
        expected = [choice_argmax(WeightVector(float(t)), TRADE_OFF) for t in thetas]
        assert picks.tolist() == expected


# =============================================================================
# Populations and aggregation
# =============================================================================


class TestPopulations:
    def test_beta_moments(self) -> None:
        pop = BetaPopulation(alpha=2.0, beta_param=2.0)
        assert pop.mean == pytest.approx(0.5)
        assert pop.variance == pytest.approx(0.05)

    def test_uniform_cdf(self) -> None:
        assert BetaPopulation.uniform().cdf(0.3) == pytest.approx(0.3)

    def test_point_mass_has_no_density(self) -> None:
        with pytest.raises(UnsupportedPrior):
            PointMassPopulation(0.5).log_density(np.array([0.5]))

    def test_empirical_interval_mass_respects_closure(self) -> None:
        pop = EmpiricalPopulation(thetas=(0.2, 0.5, 0.5, 0.8))
        assert pop.interval_mass(0.5, 0.8, lo_closed=True, hi_closed=False) == pytest.approx(0.5)
        assert pop.interval_mass(0.5, 0.8, lo_closed=False, hi_closed=True) == pytest.approx(0.25)

    def test_empirical_rejects_empty(self) -> None:
        with pytest.raises(ValueError, match="at least one"):
            EmpiricalPopulation(thetas=())

    def test_empirical_density_built_once(self) -> None:
        """Repeated density calls (one per sampler step) reuse a single KDE."""
        pop = EmpiricalPopulation(thetas=(0.2, 0.4, 0.5, 0.6, 0.8))
        with patch(
            "mixed_traffic_planner.choice.population.stats.gaussian_kde",
            wraps=stats.gaussian_kde,
        ) as kde:
            first = pop.log_density(np.array([0.5]))
            for _ in range(5):
                again = pop.log_density(np.array([0.5]))
        assert kde.call_count == 1
        assert again == pytest.approx(first)
        assert np.isfinite(first).all()

    def test_empirical_density_needs_spread(self) -> None:
        with pytest.raises(UnsupportedPrior, match="Cannot build a density"):
            EmpiricalPopulation(thetas=(0.5, 0.5, 0.5)).log_density(np.array([0.5]))


class TestAggregateQ:
    def test_point_mass_below_indifference(self) -> None:
        q = aggregate_q(PointMassPopulation(0.5), TRADE_OFF, DETERMINISTIC)
        assert q.q == pytest.approx((1.0, 0.0))

    def test_uniform_interval_lengths(self) -> None:
        q = aggregate_q(BetaPopulation.uniform(), TRADE_OFF, DETERMINISTIC)
        assert q.q == pytest.approx((20.0 / 23.0, 3.0 / 23.0), abs=1e-9)

    def test_single_option(self) -> None:
        q = aggregate_q(BetaPopulation(2.0, 5.0), Menu.from_pairs([(50.0, 4.0)]), NOISY)
        assert q.q == (1.0,)

    def test_point_mass_at_indifference_uses_tie_rule(self) -> None:
        q = aggregate_q(PointMassPopulation(20.0 / 23.0), TRADE_OFF, DETERMINISTIC)
        assert q.q == pytest.approx((1.0, 0.0))

    def test_sample_sequence(self) -> None:
        q = aggregate_q([0.1, 0.2, 0.9, 0.95], TRADE_OFF, DETERMINISTIC)
        assert q.q == pytest.approx((0.5, 0.5))

    def test_noisy_point_mass_equals_softmax(self) -> None:
        q = aggregate_q(PointMassPopulation(0.7), TRADE_OFF, NOISY)
        expected = choice_softmax(WeightVector(0.7), TRADE_OFF, NOISY)
        assert q.q == pytest.approx(expected.q)

    def test_normalized_and_dominated_get_zero(self) -> None:
        rng = np.random.default_rng(13)
        pop = BetaPopulation(2.0, 3.0)
        for _ in range(100):
            menu = random_menu(rng, n=4)
            q = aggregate_q(pop, menu, DETERMINISTIC)
            assert math.fsum(q.q) == pytest.approx(1.0, abs=1e-9)
            for i in dominated_set(menu):
                assert q.q[i] == pytest.approx(0.0, abs=1e-12)

    def test_monotone_substitution(self) -> None:
        """Raising one price never raises that option's share."""
        rng = np.random.default_rng(17)
        pop = BetaPopulation(2.0, 2.0)
        for _ in range(100):
            menu = random_menu(rng, n=3)
            i = int(rng.integers(3))
            prices = list(menu.prices)
            prices[i] += rng.uniform(0.1, 3.0)
            raised = Menu.from_vectors(menu.latencies, prices)
            before = aggregate_q(pop, menu, DETERMINISTIC).q[i]
            after = aggregate_q(pop, raised, DETERMINISTIC).q[i]
            assert after <= before + 1e-12

    def test_empirical_choices_converge(self) -> None:
        """10⁵ uniform users land within 0.01 of the interval masses."""
        rng = np.random.default_rng(0)
        thetas = rng.uniform(size=100_000)
        picks = choose_many(thetas, TRADE_OFF, DETERMINISTIC, rng)
        empirical = np.bincount(picks, minlength=2) / len(thetas)
        assert np.max(np.abs(empirical - [20.0 / 23.0, 3.0 / 23.0])) <= 0.01
