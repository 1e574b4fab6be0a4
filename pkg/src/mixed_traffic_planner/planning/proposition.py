"""Structure of optimal plans, as a predicate and as a constructive transform.

At an optimum, every road used by human drivers sits at the free-flow latency
of the slowest such road. Any plan where that road is still congested can be
improved: lower the latency on the human-used roads, and raise their prices
(plus those of dominated options) by exactly the amount that keeps every
service user's reward ranking intact. Service users stay put, profit does not
drop, and humans gain capacity at a lower latency, so J falls.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from mixed_traffic_planner.choice.population import PointMassPopulation
from mixed_traffic_planner.choice.reward import dominated_set
from mixed_traffic_planner.errors import (
    InvalidTransform,
    LatencyBelowFreeFlow,
    NotImprovable,
    PriceCapExceeded,
    ZeroPriceWeight,
)
from mixed_traffic_planner.network.models import TOLERANCE
from mixed_traffic_planner.planning.evaluate import evaluate_menu, highest_human_road

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.models import WeightVector
    from mixed_traffic_planner.network.models import Network
    from mixed_traffic_planner.planning.models import Plan, PlanningProblem


def proposition_holds(plan: Plan, network: Network, tol: float = TOLERANCE) -> bool:
    """True iff all human-used roads (and faster ones) are at or below a_k.

    k is the highest road index with human flow above ``tol``; vacuously true
    when no human drives.
    """
    k = highest_human_road(plan, tol)
    if k is None:
        return True
    a_k = network.roads[k].free_flow_latency
    return all(ell <= a_k + tol for ell in plan.ell.ell[: k + 1])


def appendix_transform(
    plan: Plan,
    problem: PlanningProblem,
    w: WeightVector,
    ell_k_new: float,
    tol: float = TOLERANCE,
) -> Plan:
    """Lower the human-used latencies to ``ell_k_new`` and compensate with prices.

    ε = (ω_latency/ω_price)·(ℓ_k − ell_k_new) is added to the price of every
    road up to k and of every dominated option, so each service user's reward
    shifts by the same amount on every option they would consider. The plan
    is then re-evaluated for a population concentrated at ``w``.

    Raises:
        ZeroPriceWeight: if w puts no weight on price.
        NotImprovable: if no human drives, road k is already at free flow, or
            ``ell_k_new`` is not strictly below ℓ_k.
        LatencyBelowFreeFlow: if ``ell_k_new`` is below a_k.
        InvalidTransform: if the roads below k are not at ℓ_k.
        PriceCapExceeded: if a raised price exceeds p_max.
    """
    if w.omega_price <= 0:
        raise ZeroPriceWeight(f"θ={w.theta} puts no weight on price")
    network = problem.network
    k = highest_human_road(plan, tol)
    if k is None:
        raise NotImprovable("No human flow, nothing to transform")
    ell = list(plan.ell.ell)
    a_k = network.roads[k].free_flow_latency
    if ell[k] <= a_k + tol:
        raise NotImprovable(f"Road {k} already at free-flow latency {a_k:.6g}s")
    if ell_k_new >= ell[k]:
        msg = f"New latency {ell_k_new:.6g}s must be strictly below {ell[k]:.6g}s"
        raise NotImprovable(msg)
    if ell_k_new < a_k - tol:
        msg = f"New latency {ell_k_new:.6g}s below free-flow latency {a_k:.6g}s of road {k}"
        raise LatencyBelowFreeFlow(msg)
    if any(abs(ell[i] - ell[k]) > tol for i in range(k)):
        raise InvalidTransform(f"Roads 0..{k - 1} are not all at ℓ_k={ell[k]:.6g}s")

    epsilon = w.omega_latency / w.omega_price * (ell[k] - ell_k_new)
    raised = set(range(k + 1)) | dominated_set(plan.menu)
    prices = [price + epsilon if i in raised else price for i, price in enumerate(plan.p)]
    over = [i for i in raised if prices[i] > problem.p_max + tol]
    if over:
        msg = f"Raising prices by ε={epsilon:.6g} exceeds p_max={problem.p_max} on roads {sorted(over)}"
        raise PriceCapExceeded(msg)
    for i in range(k + 1):
        ell[i] = ell_k_new

    homogeneous = problem.with_population(PointMassPopulation(theta=w.theta))
    new_plan, _ = evaluate_menu(homogeneous, ell, prices)
    return new_plan
