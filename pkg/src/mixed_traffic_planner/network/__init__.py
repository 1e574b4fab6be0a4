"""Physical model of a parallel road network shared by human and autonomous cars.

Public API:
  - models: Road, Network, CongestionProfile, FlowAssignment, TOLERANCE
  - capacity: free_flow_latency, speed_at_latency, is_feasible, max_total_flow,
              residual_human_capacity, autonomy_level, utilization, occupancy
"""

from mixed_traffic_planner.network.capacity import (
    autonomy_level,
    free_flow_latency,
    is_feasible,
    max_total_flow,
    occupancy,
    residual_human_capacity,
    speed_at_latency,
    utilization,
)
from mixed_traffic_planner.network.models import (
    TOLERANCE,
    CongestionProfile,
    FlowAssignment,
    Network,
    Road,
    as_tuple,
)

__all__ = [
    "TOLERANCE",
    "CongestionProfile",
    "FlowAssignment",
    "Network",
    "Road",
    "as_tuple",
    "autonomy_level",
    "free_flow_latency",
    "is_feasible",
    "max_total_flow",
    "occupancy",
    "residual_human_capacity",
    "speed_at_latency",
    "utilization",
]
