"""Pure capacity functions for mixed human/autonomous roads (no I/O).

Capacity law (headway-based occupancy on the congested branch):

    v = d / ℓ
    f_h · (L + τ_h · v) + f_a · (L + τ_a · v) ≤ v

Each vehicle occupies its own length plus the distance covered during its
headway time; the space claimed per second may not exceed the distance the
stream advances per second. Capacity therefore grows as ℓ drops toward free
flow, and platooning (τ_a ≤ τ_h) adds capacity.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from mixed_traffic_planner.errors import AutonomousFlowInfeasible, LatencyBelowFreeFlow
from mixed_traffic_planner.network.models import TOLERANCE

if TYPE_CHECKING:
    from mixed_traffic_planner.network.models import Road


def free_flow_latency(road: Road) -> float:
    """Travel time at free-flow speed, d / v_bar (seconds)."""
    return road.d / road.v_bar


def speed_at_latency(road: Road, ell: float) -> float:
    """Speed implied by a posted latency, d / ℓ (m/s).

    Raises:
        LatencyBelowFreeFlow: if ℓ is below the free-flow latency.
    """
    a = free_flow_latency(road)
    if ell < a - TOLERANCE:
        msg = f"Road {road.id}: latency {ell:.6g}s is below free-flow latency {a:.6g}s"
        raise LatencyBelowFreeFlow(msg)
    # Clamp rounding noise so the speed never exceeds v_bar
    return min(road.d / ell, road.v_bar)


def occupancy(road: Road, ell: float, f_h: float, f_a: float) -> float:
    """Space claimed per second by the given flows (meters per second)."""
    v = speed_at_latency(road, ell)
    return f_h * (road.L + road.tau_h * v) + f_a * (road.L + road.tau_a * v)


def is_feasible(road: Road, ell: float, f_h: float, f_a: float) -> bool:
    """True iff the flows fit on the road at latency ℓ."""
    v = speed_at_latency(road, ell)
    return occupancy(road, ell, f_h, f_a) <= v * (1 + TOLERANCE) + TOLERANCE


def max_total_flow(road: Road, ell: float, alpha: float) -> float:
    """Largest total flow with autonomy fraction ``alpha`` that fits at latency ℓ.

    Args:
        road: The road.
        ell: Posted latency in seconds (≥ free-flow latency).
        alpha: Fraction of the flow that is autonomous, in [0, 1].

    Returns:
        v / (L + ((1 − α)·τ_h + α·τ_a)·v), in vehicles per second.
    """
    if not 0.0 <= alpha <= 1.0:
        msg = f"alpha must be in [0, 1], got {alpha}"
        raise ValueError(msg)
    v = speed_at_latency(road, ell)
    headway = (1.0 - alpha) * road.tau_h + alpha * road.tau_a
    return v / (road.L + headway * v)


def residual_human_capacity(road: Road, ell: float, f_a: float) -> float:
    """Largest human flow that still fits next to autonomous flow ``f_a``.

    Raises:
        AutonomousFlowInfeasible: if ``f_a`` alone overflows the road.
    """
    v = speed_at_latency(road, ell)
    if not is_feasible(road, ell, 0.0, f_a):
        msg = f"Road {road.id}: autonomous flow {f_a:.6g} veh/s exceeds capacity at {ell:.6g}s"
        raise AutonomousFlowInfeasible(msg)
    spare = v - f_a * (road.L + road.tau_a * v)
    return max(0.0, spare / (road.L + road.tau_h * v))


def autonomy_level(f_h: float, f_a: float) -> float:
    """Fraction of a road's flow that is autonomous (0 for an empty road)."""
    total = f_h + f_a
    return f_a / total if total > 0 else 0.0


def utilization(road: Road, ell: float, f_h: float, f_a: float) -> float:
    """Occupied share of the road's throughput at latency ℓ (1.0 = saturated)."""
    return occupancy(road, ell, f_h, f_a) / speed_at_latency(road, ell)
