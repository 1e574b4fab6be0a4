"""Plan evaluation: profit, social cost and the menu → plan pipeline."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from mixed_traffic_planner.choice.aggregate import aggregate_q
from mixed_traffic_planner.choice.models import Menu
from mixed_traffic_planner.errors import ZeroDemand
from mixed_traffic_planner.network.capacity import (
    autonomy_level,
    is_feasible,
    residual_human_capacity,
    utilization,
)
from mixed_traffic_planner.network.models import TOLERANCE, CongestionProfile, FlowAssignment, as_tuple
from mixed_traffic_planner.planning.models import Plan, PlanEvaluation
from mixed_traffic_planner.planning.routing import human_fill

if TYPE_CHECKING:
    from collections.abc import Sequence

    from mixed_traffic_planner.choice.models import ChoiceDistribution
    from mixed_traffic_planner.network.models import Network
    from mixed_traffic_planner.planning.models import PlanningProblem


def profit(plan: Plan) -> float:
    """Operator revenue Σ p_i·fᵃ_i (currency/s)."""
    return math.fsum(p * f for p, f in zip(plan.p, plan.f_a, strict=True))


def unserved_human(plan: Plan, F_h: float) -> float:
    """Human demand left without a road."""
    left = F_h - math.fsum(plan.f_h)
    return left if left > TOLERANCE else 0.0


def objective_J(plan: Plan, problem: PlanningProblem) -> float:
    """Flow-averaged latency, charging ``ell_pen`` per unit of unserved human demand.

    J = [Σ ℓ_i·(fʰ_i + fᵃ_i) + ell_pen·unserved_h] / (F_h + F_a)

    Raises:
        ZeroDemand: if there is no demand at all.
    """
    total = problem.total_demand
    if total <= 0:
        raise ZeroDemand("J is undefined when F_h + F_a = 0")
    travel = math.fsum(ell * f for ell, f in zip(plan.ell.ell, plan.flows.total, strict=True))
    penalty = problem.penalty_latency * unserved_human(plan, problem.F_h)
    return (travel + penalty) / total


def highest_human_road(plan: Plan, tol: float = TOLERANCE) -> int | None:
    """Largest road index carrying human flow above ``tol``."""
    used = [i for i, f in enumerate(plan.f_h) if f > tol]
    return used[-1] if used else None


def _mean_latency(ell: Sequence[float], flows: Sequence[float]) -> float | None:
    total = math.fsum(flows)
    if total <= TOLERANCE:
        return None
    return math.fsum(e * f for e, f in zip(ell, flows, strict=True)) / total


def evaluate_plan(problem: PlanningProblem, plan: Plan) -> PlanEvaluation:
    """Score an arbitrary plan, including realized (simulated) ones."""
    network = problem.network
    flows_ok = all(
        is_feasible(road, ell, f_h, f_a)
        for road, ell, f_h, f_a in zip(network.roads, plan.ell.ell, plan.f_h, plan.f_a, strict=True)
    )
    revenue = profit(plan)
    profit_ok = revenue >= problem.P_min - TOLERANCE
    return PlanEvaluation(
        J=objective_J(plan, problem),
        profit=revenue,
        unserved_h=unserved_human(plan, problem.F_h),
        feasible=flows_ok and profit_ok,
        k=highest_human_road(plan),
        profit_ok=profit_ok,
        flows_ok=flows_ok,
        autonomy=tuple(autonomy_level(h, a) for h, a in zip(plan.f_h, plan.f_a, strict=True)),
        utilization=tuple(
            utilization(road, ell, h, a)
            for road, ell, h, a in zip(network.roads, plan.ell.ell, plan.f_h, plan.f_a, strict=True)
        ),
        mean_latency_h=_mean_latency(plan.ell.ell, plan.f_h),
        mean_latency_a=_mean_latency(plan.ell.ell, plan.f_a),
    )


def route_flows(
    network: Network,
    ell: CongestionProfile,
    q: ChoiceDistribution,
    F_h: float,
    F_a: float,
) -> FlowAssignment:
    """Place service users by q, then let humans fill what is left.

    Roads whose autonomous flow alone overflows get no human capacity; the
    resulting plan then fails ``flows_ok``.
    """
    f_a = tuple(F_a * share for share in q.q)
    residual = [
        residual_human_capacity(road, latency, fa) if is_feasible(road, latency, 0.0, fa) else 0.0
        for road, latency, fa in zip(network.roads, ell.ell, f_a, strict=True)
    ]
    f_h, _ = human_fill(network, ell, residual, F_h)
    return FlowAssignment(f_h=f_h, f_a=f_a)


def evaluate_menu(
    problem: PlanningProblem,
    ell: Sequence[float],
    p: Sequence[float],
) -> tuple[Plan, PlanEvaluation]:
    """Predict choices for a posted menu, route everyone, and score the result.

    Infeasibility (profit floor or autonomous overflow) is reported through
    the evaluation flags, never raised.
    """
    profile = CongestionProfile(ell=as_tuple(ell))
    profile.check_against(problem.network)
    prices = as_tuple(p)
    q = aggregate_q(problem.population, Menu.from_vectors(profile.ell, prices), problem.noise)
    flows = route_flows(problem.network, profile, q, problem.F_h, problem.F_a)
    plan = Plan(ell=profile, p=prices, flows=flows, q=q)
    return plan, evaluate_plan(problem, plan)


def zero_price_plan(problem: PlanningProblem) -> tuple[Plan, PlanEvaluation]:
    """Baseline: every road at free flow, every price zero."""
    network = problem.network
    return evaluate_menu(problem, network.free_flow_latencies, (0.0,) * network.n)
