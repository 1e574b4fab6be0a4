"""Tests for the planner: routing, evaluation, search and the optimality transform."""

from __future__ import annotations

import math

import numpy as np
import pytest

from mixed_traffic_planner.choice import (
    BetaPopulation,
    ChoiceDistribution,
    Menu,
    PointMassPopulation,
    WeightVector,
)
from mixed_traffic_planner.choice.aggregate import aggregate_q
from mixed_traffic_planner.choice.models import ChoiceNoise
from mixed_traffic_planner.errors import (
    Infeasible,
    InvalidTransform,
    LatencyBelowFreeFlow,
    NotImprovable,
    PriceCapExceeded,
    SearchSpaceTooLarge,
    ZeroDemand,
    ZeroPriceWeight,
)
from mixed_traffic_planner.network import CongestionProfile, FlowAssignment, Network, is_feasible
from mixed_traffic_planner.planning import (
    Plan,
    PlanningProblem,
    appendix_transform,
    brute_force,
    evaluate_menu,
    evaluate_plan,
    highest_human_road,
    human_fill,
    latency_grid,
    latency_step,
    objective_J,
    optimize,
    price_grid,
    profit,
    proposition_holds,
    wardrop_consistent,
    zero_price_plan,
)
from mixed_traffic_planner.planning.search import brute_force_grids, reduced_profiles
from tests.conftest import make_network, make_road

# a = (50, 60) s
TWO_ROADS = Network.from_roads([make_road(20.0), make_road(20.0, d=1200.0, road_id=1)])


def make_problem(network: Network, **overrides: object) -> PlanningProblem:
    params: dict[str, object] = {
        "network": network,
        "F_h": 0.4,
        "F_a": 0.2,
        "P_min": 0.0,
        "p_max": 10.0,
        "ell_max": 120.0,
        "population": BetaPopulation.uniform(),
        "latency_grid": 3,
        "price_grid": 3,
    }
    params.update(overrides)
    return PlanningProblem(**params)  # type: ignore[arg-type]


def make_plan(ell: tuple[float, ...], f_h: tuple[float, ...], f_a: tuple[float, ...] | None = None) -> Plan:
    n = len(ell)
    f_a = f_a if f_a is not None else (0.0,) * n
    return Plan(
        ell=CongestionProfile(ell=ell),
        p=(0.0,) * n,
        flows=FlowAssignment(f_h=f_h, f_a=f_a),
        q=ChoiceDistribution(q=(1.0,) + (0.0,) * (n - 1)),
    )


# =============================================================================
# Problem
# =============================================================================


class TestPlanningProblem:
    def test_default_penalty_latency(self) -> None:
        assert make_problem(TWO_ROADS).penalty_latency == 240.0

    def test_rejects_penalty_not_above_cap(self) -> None:
        with pytest.raises(ValueError, match="ell_pen"):
            make_problem(TWO_ROADS, ell_pen=120.0)

    def test_rejects_cap_below_slowest_road(self) -> None:
        with pytest.raises(ValueError, match="ell_max"):
            make_problem(TWO_ROADS, ell_max=55.0)

    def test_rejects_single_point_grid(self) -> None:
        with pytest.raises(ValueError, match="Grids"):
            make_problem(TWO_ROADS, price_grid=1)

    def test_with_population(self) -> None:
        problem = make_problem(TWO_ROADS).with_population(PointMassPopulation(0.4))
        assert problem.population == PointMassPopulation(0.4)


# =============================================================================
# Routing
# =============================================================================


class TestHumanFill:
    def test_fills_fastest_first(self) -> None:
        flows, unserved = human_fill(TWO_ROADS, CongestionProfile((50.0, 60.0)), (0.3, 0.5), 0.4)
        assert flows == pytest.approx((0.3, 0.1))
        assert unserved == 0.0

    def test_overflow_is_unserved(self) -> None:
        flows, unserved = human_fill(TWO_ROADS, CongestionProfile((50.0, 60.0)), (0.3, 0.5), 0.9)
        assert flows == pytest.approx((0.3, 0.5))
        assert unserved == pytest.approx(0.1)

    def test_no_demand(self) -> None:
        flows, unserved = human_fill(TWO_ROADS, CongestionProfile((50.0, 60.0)), (0.3, 0.5), 0.0)
        assert flows == (0.0, 0.0)
        assert unserved == 0.0

    def test_equal_latency_splits_by_residual(self) -> None:
        flows, _ = human_fill(TWO_ROADS, CongestionProfile((60.0, 60.0)), (0.1, 0.3), 0.2)
        assert flows == pytest.approx((0.05, 0.15))

    def test_order_follows_latency_not_index(self) -> None:
        flows, _ = human_fill(TWO_ROADS, CongestionProfile((80.0, 60.0)), (0.5, 0.5), 0.3)
        assert flows == pytest.approx((0.0, 0.3))

    def test_rejects_negative_residual(self) -> None:
        with pytest.raises(ValueError, match="non-negative"):
            human_fill(TWO_ROADS, CongestionProfile((50.0, 60.0)), (-0.1, 0.5), 0.3)


class TestWardropConsistent:
    def test_human_fill_output(self) -> None:
        plan, _ = evaluate_menu(make_problem(TWO_ROADS, F_h=0.7), (55.0, 60.0), (0.0, 0.0))
        assert wardrop_consistent(plan, TWO_ROADS)

    def test_profitable_deviation(self) -> None:
        assert not wardrop_consistent(make_plan((50.0, 60.0), (0.0, 0.1)), TWO_ROADS)

    def test_no_humans(self) -> None:
        assert wardrop_consistent(make_plan((50.0, 60.0), (0.0, 0.0)), TWO_ROADS)


# =============================================================================
# Evaluation
# =============================================================================


class TestProfit:
    def test_zero_prices(self) -> None:
        assert profit(make_plan((50.0, 60.0), (0.0, 0.0), (0.1, 0.2))) == 0.0

    def test_dot_product(self) -> None:
        plan = Plan(
            ell=CongestionProfile((50.0, 60.0)),
            p=(2.0, 0.0),
            flows=FlowAssignment(f_h=(0.0, 0.0), f_a=(0.1, 0.2)),
            q=ChoiceDistribution((1 / 3, 2 / 3)),
        )
        assert profit(plan) == pytest.approx(0.2)


class TestObjectiveJ:
    def test_single_road(self) -> None:
        network = make_network(20.0)
        problem = make_problem(network, F_h=0.3, F_a=0.0)
        assert objective_J(make_plan((50.0,), (0.3,)), problem) == pytest.approx(50.0)

    def test_weighted_mean(self) -> None:
        problem = make_problem(TWO_ROADS, F_h=1.0, F_a=0.0)
        assert objective_J(make_plan((50.0, 70.0), (0.75, 0.25)), problem) == pytest.approx(55.0)

    def test_unserved_penalty(self) -> None:
        problem = make_problem(TWO_ROADS, F_h=1.0, F_a=0.0)
        # 0.2 unserved at 240 s
        assert objective_J(make_plan((50.0, 70.0), (0.6, 0.2)), problem) == pytest.approx(30.0 + 14.0 + 48.0)

    def test_lower_latency_lowers_J(self) -> None:
        problem = make_problem(TWO_ROADS, F_h=1.0, F_a=0.0)
        before = objective_J(make_plan((50.0, 70.0), (0.75, 0.25)), problem)
        after = objective_J(make_plan((50.0, 65.0), (0.75, 0.25)), problem)
        assert after < before

    def test_zero_demand(self) -> None:
        problem = make_problem(TWO_ROADS, F_h=0.0, F_a=0.0)
        with pytest.raises(ZeroDemand):
            objective_J(make_plan((50.0, 60.0), (0.0, 0.0)), problem)


class TestEvaluateMenu:
    def test_no_service_demand(self) -> None:
        problem = make_problem(TWO_ROADS, F_h=0.3, F_a=0.0)
        plan, evaluation = evaluate_menu(problem, (50.0, 60.0), (0.0, 0.0))
        assert plan.f_a == (0.0, 0.0)
        assert plan.f_h == pytest.approx((0.3, 0.0))
        assert evaluation.feasible

    def test_homogeneous_users_take_fast_option(self) -> None:
        problem = make_problem(TWO_ROADS, population=PointMassPopulation(0.5), ell_max=120.0)
        plan, _ = evaluate_menu(problem, (50.0, 70.0), (4.0, 1.0))
        assert plan.f_a == pytest.approx((0.2, 0.0))

    def test_profit_floor_above_revenue_cap(self) -> None:
        problem = make_problem(TWO_ROADS, P_min=10.0 * 0.2 + 0.1)
        _, evaluation = evaluate_menu(problem, (50.0, 60.0), (10.0, 10.0))
        assert not evaluation.feasible
        assert not evaluation.profit_ok
        assert evaluation.flows_ok

    def test_autonomous_overflow_is_flagged(self) -> None:
        """1.0 veh/s of autonomous flow exceeds the 0.8 veh/s free-flow capacity."""
        problem = make_problem(make_network(20.0), F_h=0.1, F_a=1.0)
        plan, evaluation = evaluate_menu(problem, (50.0,), (0.0,))
        assert not evaluation.flows_ok
        assert plan.f_h == (0.0,)
        assert evaluation.unserved_h == pytest.approx(0.1)

    def test_rejects_latency_below_free_flow(self) -> None:
        with pytest.raises(ValueError, match="below free flow"):
            evaluate_menu(make_problem(TWO_ROADS), (45.0, 60.0), (0.0, 0.0))

    def test_demand_conservation(self, canonical_problem: PlanningProblem) -> None:
        rng = np.random.default_rng(0)
        a = canonical_problem.network.free_flow_latencies
        for _ in range(50):
            ell = [float(x) for x in rng.uniform(a, 120.0)]
            p = [float(x) for x in rng.uniform(0.0, 10.0, size=3)]
            plan, evaluation = evaluate_menu(canonical_problem, ell, p)
            assert math.fsum(plan.f_h) + evaluation.unserved_h == pytest.approx(canonical_problem.F_h, abs=1e-9)
            assert math.fsum(plan.f_a) == pytest.approx(canonical_problem.F_a, abs=1e-12)

    def test_road_usage_fields(self, canonical_problem: PlanningProblem) -> None:
        _, evaluation = evaluate_menu(canonical_problem, (40.0, 50.0, 70.0), (8.0, 4.0, 1.0))
        assert len(evaluation.autonomy) == 3
        assert all(u >= 0.0 for u in evaluation.utilization)
        assert evaluation.mean_latency_h is not None


class TestEvaluatePlan:
    def test_mean_latencies_absent_without_flow(self) -> None:
        evaluation = evaluate_plan(make_problem(TWO_ROADS, F_a=0.0), make_plan((50.0, 60.0), (0.4, 0.0)))
        assert evaluation.mean_latency_a is None
        assert evaluation.mean_latency_h == pytest.approx(50.0)

    def test_highest_human_road(self) -> None:
        assert highest_human_road(make_plan((50.0, 60.0), (0.2, 0.1))) == 1
        assert highest_human_road(make_plan((50.0, 60.0), (0.0, 0.0))) is None


class TestZeroPricePlan:
    def test_free_flow_and_zero_prices(self, canonical_problem: PlanningProblem) -> None:
        plan, evaluation = zero_price_plan(canonical_problem)
        assert plan.ell.ell == canonical_problem.network.free_flow_latencies
        assert plan.p == (0.0, 0.0, 0.0)
        # Every service user takes the fastest road
        assert plan.f_a == pytest.approx((0.3, 0.0, 0.0))
        assert evaluation.flows_ok
        assert not evaluation.profit_ok


# =============================================================================
# Proposition
# =============================================================================


class TestPropositionHolds:
    def test_vacuous(self) -> None:
        assert proposition_holds(make_plan((50.0, 60.0), (0.0, 0.0)), TWO_ROADS)

    def test_pinned_at_slowest_free_flow(self) -> None:
        assert proposition_holds(make_plan((60.0, 60.0), (0.1, 0.1)), TWO_ROADS)

    def test_congested_human_road(self) -> None:
        assert not proposition_holds(make_plan((70.0, 70.0), (0.1, 0.1)), TWO_ROADS)


# =============================================================================
# Search
# =============================================================================


class TestGrids:
    def test_latency_grid(self) -> None:
        problem = make_problem(TWO_ROADS, latency_grid=3)
        assert latency_grid(problem, 0) == pytest.approx((50.0, 85.0, 120.0))

    def test_price_grid(self) -> None:
        assert price_grid(make_problem(TWO_ROADS, price_grid=3)) == pytest.approx((0.0, 5.0, 10.0))

    def test_latency_step_is_widest_spacing(self) -> None:
        assert latency_step(make_problem(TWO_ROADS, latency_grid=3)) == pytest.approx(35.0)

    def test_reduced_profiles_order(self) -> None:
        profiles = list(reduced_profiles(make_problem(TWO_ROADS, latency_grid=3)))
        assert profiles[0] == (0, (50.0, 60.0))
        assert profiles[-1] == (1, (60.0, 60.0))
        assert [k for k, _ in profiles] == [0, 0, 0, 1]

    def test_brute_force_grids_include_slower_free_flow(self) -> None:
        grids = brute_force_grids(make_problem(TWO_ROADS, latency_grid=3))
        assert 60.0 in grids[0]


class TestOptimize:
    def test_single_road_no_decision(self) -> None:
        problem = make_problem(make_network(20.0), F_h=0.3, F_a=0.0)
        plan, evaluation = optimize(problem)
        assert plan.ell.ell == (50.0,)
        assert evaluation.J == pytest.approx(50.0)

    def test_result_is_feasible_and_structured(self, canonical_problem: PlanningProblem) -> None:
        plan, evaluation = optimize(canonical_problem)
        network = canonical_problem.network
        assert evaluation.feasible
        assert wardrop_consistent(plan, network)
        assert proposition_holds(plan, network)
        assert all(
            is_feasible(road, ell, h, a)
            for road, ell, h, a in zip(network.roads, plan.ell.ell, plan.f_h, plan.f_a, strict=True)
        )

    def test_trace_records_every_candidate(self) -> None:
        problem = make_problem(TWO_ROADS)
        trace: list = []
        optimize(problem, trace=trace)
        # 3 tails for k=0 plus the pinned profile, each with 3² prices
        assert len(trace) == 4 * 9
        assert trace[0].k == 0
        assert trace[0].ell == (50.0, 60.0)

    def test_infeasible(self) -> None:
        problem = make_problem(TWO_ROADS, P_min=10.0 * 0.2 + 0.1)
        with pytest.raises(Infeasible):
            optimize(problem)

    def test_deterministic(self, canonical_problem: PlanningProblem) -> None:
        assert optimize(canonical_problem) == optimize(canonical_problem)

    def test_beats_zero_price_under_profit_floor(self, canonical_problem: PlanningProblem) -> None:
        _, evaluation = optimize(canonical_problem)
        assert evaluation.profit >= canonical_problem.P_min - 1e-9

    def test_proposition_suite(self) -> None:
        """20 random 3-road problems: optimal plans keep human roads at a_k."""
        rng = np.random.default_rng(2024)
        for _ in range(20):
            network = make_network(*sorted(rng.uniform(12.0, 30.0, size=3), reverse=True))
            F_a = float(rng.uniform(0.05, 0.4))
            problem = make_problem(
                network,
                F_h=float(rng.uniform(0.1, 0.8)),
                F_a=F_a,
                P_min=float(rng.uniform(0.0, 0.5 * 10.0 * F_a)),
                population=BetaPopulation(float(rng.uniform(1.0, 4.0)), float(rng.uniform(1.0, 4.0))),
            )
            plan, _ = optimize(problem)
            assert proposition_holds(plan, network, tol=latency_step(problem))


class TestBruteForce:
    def test_single_road_matches_optimize(self) -> None:
        problem = make_problem(make_network(20.0), F_h=0.3, F_a=0.2)
        assert brute_force(problem)[1].J == pytest.approx(optimize(problem)[1].J)

    def test_too_many_roads(self) -> None:
        problem = make_problem(make_network(30.0, 25.0, 20.0, 15.0))
        with pytest.raises(SearchSpaceTooLarge, match="at most 3"):
            brute_force(problem)

    def test_too_many_candidates(self) -> None:
        with pytest.raises(SearchSpaceTooLarge, match="exceed"):
            brute_force(make_problem(TWO_ROADS), max_candidates=10)

    def test_infeasible_from_both(self) -> None:
        problem = make_problem(TWO_ROADS, P_min=10.0 * 0.2 + 0.1)
        with pytest.raises(Infeasible):
            brute_force(problem)
        with pytest.raises(Infeasible):
            optimize(problem)

    def test_oracle_equivalence(self) -> None:
        """20 random 2-road problems: the reduced search is within one grid step of exhaustive search."""
        rng = np.random.default_rng(99)
        for _ in range(20):
            network = make_network(*sorted(rng.uniform(15.0, 30.0, size=2), reverse=True))
            F_a = float(rng.uniform(0.05, 0.3))
            problem = make_problem(
                network,
                F_h=float(rng.uniform(0.1, 0.6)),
                F_a=F_a,
                P_min=float(rng.uniform(0.0, 0.5 * 10.0 * F_a)),
                population=BetaPopulation(float(rng.uniform(1.0, 4.0)), float(rng.uniform(1.0, 4.0))),
                latency_grid=4,
                price_grid=4,
            )
            _, reduced = optimize(problem)
            _, full = brute_force(problem)
            assert full.J <= reduced.J + 1e-9
            assert reduced.J <= full.J + latency_step(problem)


# =============================================================================
# Optimality transform
# =============================================================================


def homogeneous_problem(theta: float, **overrides: object) -> PlanningProblem:
    params: dict[str, object] = {"F_h": 0.3, "F_a": 0.2, "p_max": 50.0, "population": PointMassPopulation(theta)}
    params.update(overrides)
    return make_problem(make_network(25.0, 20.0), **params)


class TestAppendixTransform:
    def test_price_bump_and_latency_drop(self) -> None:
        """ω=(0.5, 0.5), ℓ_k 60 → 50 raises prices by ε=10."""
        problem = homogeneous_problem(0.5)
        plan, evaluation = evaluate_menu(problem, (60.0, 60.0), (1.0, 1.0))
        assert highest_human_road(plan) == 1

        new = appendix_transform(plan, problem, WeightVector(0.5), 50.0)
        assert new.ell.ell == (50.0, 50.0)
        assert new.p == pytest.approx((11.0, 11.0))
        assert new.q == plan.q
        new_eval = evaluate_plan(problem, new)
        assert new_eval.profit >= evaluation.profit
        assert new_eval.J < evaluation.J

    def test_no_change_requested(self) -> None:
        problem = homogeneous_problem(0.5)
        plan, _ = evaluate_menu(problem, (60.0, 60.0), (1.0, 1.0))
        with pytest.raises(NotImprovable):
            appendix_transform(plan, problem, WeightVector(0.5), 60.0)

    def test_already_at_free_flow(self) -> None:
        problem = homogeneous_problem(0.5)
        plan, _ = evaluate_menu(problem, (50.0, 50.0), (1.0, 1.0))
        with pytest.raises(NotImprovable):
            appendix_transform(plan, problem, WeightVector(0.5), 45.0)

    def test_no_human_flow(self) -> None:
        problem = homogeneous_problem(0.5, F_h=0.0)
        plan, _ = evaluate_menu(problem, (60.0, 60.0), (1.0, 1.0))
        with pytest.raises(NotImprovable):
            appendix_transform(plan, problem, WeightVector(0.5), 50.0)

    def test_below_free_flow(self) -> None:
        problem = homogeneous_problem(0.5)
        plan, _ = evaluate_menu(problem, (60.0, 60.0), (1.0, 1.0))
        with pytest.raises(LatencyBelowFreeFlow):
            appendix_transform(plan, problem, WeightVector(0.5), 45.0)

    def test_price_blind_user(self) -> None:
        problem = homogeneous_problem(0.0)
        plan, _ = evaluate_menu(problem, (60.0, 60.0), (1.0, 1.0))
        with pytest.raises(ZeroPriceWeight):
            appendix_transform(plan, problem, WeightVector(0.0), 50.0)

    def test_price_cap(self) -> None:
        problem = homogeneous_problem(0.5, p_max=5.0)
        plan, _ = evaluate_menu(problem, (60.0, 60.0), (1.0, 1.0))
        with pytest.raises(PriceCapExceeded):
            appendix_transform(plan, problem, WeightVector(0.5), 50.0)

    def test_faster_roads_not_at_common_latency(self) -> None:
        problem = homogeneous_problem(0.5, F_h=0.7)
        plan, _ = evaluate_menu(problem, (55.0, 60.0), (1.0, 1.0))
        assert highest_human_road(plan) == 1
        with pytest.raises(InvalidTransform, match="not all at"):
            appendix_transform(plan, problem, WeightVector(0.5), 55.0)

    def test_transform_suite(self, canonical_network: Network) -> None:
        """100 random homogeneous plans: q unchanged, profit kept, J strictly lower."""
        rng = np.random.default_rng(7)
        a = canonical_network.free_flow_latencies
        checked = 0
        while checked < 100:
            theta = float(rng.uniform(0.05, 0.95))
            problem = PlanningProblem(
                network=canonical_network,
                F_h=float(rng.uniform(0.05, 0.3)),
                F_a=float(rng.uniform(0.05, 0.3)),
                P_min=0.0,
                p_max=1000.0,
                ell_max=120.0,
                population=PointMassPopulation(theta),
                noise=ChoiceNoise(),
            )
            k = int(rng.integers(3))
            ell_k = float(rng.uniform(a[k] + 1.0, 110.0))
            ell = [ell_k] * (k + 1) + [float(rng.uniform(max(a[j], ell_k) + 1.0, 120.0)) for j in range(k + 1, 3)]
            p = [float(x) for x in rng.uniform(0.0, 10.0, size=3)]
            plan, evaluation = evaluate_menu(problem, ell, p)
            if highest_human_road(plan) != k or not evaluation.flows_ok:
                continue
            ell_new = float(rng.uniform(a[k], ell_k - 0.5))

            new = appendix_transform(plan, problem, WeightVector(theta), ell_new)
            new_eval = evaluate_plan(problem, new)
            assert new.q == plan.q
            assert new_eval.profit >= evaluation.profit - 1e-12
            assert new_eval.J < evaluation.J - 1e-9
            checked += 1

    def test_epsilon_keeps_population_choice(self) -> None:
        """Rewards of the raised options shift equally, so q is the same under the new menu."""
        theta = 0.25
        problem = homogeneous_problem(theta, F_h=0.2)
        plan, _ = evaluate_menu(problem, (70.0, 70.0), (3.0, 2.0))
        new = appendix_transform(plan, problem, WeightVector(theta), 55.0)
        # ε = (0.75 / 0.25)·15
        assert new.p == pytest.approx((48.0, 47.0))
        menu = Menu.from_vectors(new.ell.ell, new.p)
        assert aggregate_q(PointMassPopulation(theta), menu, ChoiceNoise()) == plan.q
