"""Selfish routing of human drivers over posted latencies.

Humans take the quickest road that still has room: latency classes are
filled in ascending order, a slower class only receiving flow once every
faster road is full. Within a class of equal latency the flow is split in
proportion to residual capacity.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from mixed_traffic_planner.network.capacity import is_feasible, residual_human_capacity
from mixed_traffic_planner.network.models import TOLERANCE

if TYPE_CHECKING:
    from collections.abc import Sequence

    from mixed_traffic_planner.network.models import CongestionProfile, Network
    from mixed_traffic_planner.planning.models import Plan


def human_fill(
    network: Network,
    ell: CongestionProfile,
    residual: Sequence[float],
    F_h: float,
) -> tuple[tuple[float, ...], float]:
    """Assign human demand greedily by latency.

    Args:
        network: The network (fixes the number of roads).
        ell: Posted latencies.
        residual: Human capacity left on each road (veh/s, ≥ 0).
        F_h: Human demand (veh/s).

    Returns:
        (per-road human flow, unserved human demand)
    """
    if len(residual) != network.n or len(ell.ell) != network.n:
        raise ValueError("residual and latencies must have one entry per road")
    if any(r < 0 for r in residual):
        raise ValueError("Residual capacities must be non-negative")

    flows = [0.0] * network.n
    remaining = F_h
    order = sorted(range(network.n), key=lambda i: (ell.ell[i], i))
    start = 0
    while start < len(order) and remaining > 0:
        anchor = ell.ell[order[start]]
        end = start
        while end < len(order) and ell.ell[order[end]] <= anchor + TOLERANCE:
            end += 1
        members = order[start:end]
        capacity = sum(residual[i] for i in members)
        if capacity > 0:
            if remaining >= capacity:
                for i in members:
                    flows[i] = residual[i]
                remaining -= capacity
            else:
                for i in members:
                    flows[i] = remaining * residual[i] / capacity
                remaining = 0.0
        start = end
    return tuple(flows), max(0.0, remaining)


def spare_human_capacity(plan: Plan, network: Network) -> tuple[float, ...]:
    """Room left for additional human flow on each road under the plan."""
    spare: list[float] = []
    for road, ell, f_h, f_a in zip(network.roads, plan.ell.ell, plan.f_h, plan.f_a, strict=True):
        if not is_feasible(road, ell, 0.0, f_a):
            spare.append(0.0)
            continue
        spare.append(residual_human_capacity(road, ell, f_a) - f_h)
    return tuple(spare)


def wardrop_consistent(plan: Plan, network: Network, tol: float = TOLERANCE) -> bool:
    """True iff no human driver could switch to a strictly faster road with room."""
    spare = spare_human_capacity(plan, network)
    ell = plan.ell.ell
    for i, f_h in enumerate(plan.f_h):
        if f_h <= tol:
            continue
        for j in range(network.n):
            if ell[j] < ell[i] - tol and spare[j] > tol:
                return False
    return True
