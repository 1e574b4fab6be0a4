"""Choosing latencies and prices for the posted menu.

Public API:
  - models: PlanningProblem, Plan, PlanEvaluation, CandidateRecord
  - routing: human_fill, wardrop_consistent
  - evaluate: profit, objective_J, evaluate_menu, evaluate_plan, zero_price_plan
  - search: optimize, brute_force
  - proposition: proposition_holds, appendix_transform
"""

from mixed_traffic_planner.planning.evaluate import (
    evaluate_menu,
    evaluate_plan,
    highest_human_road,
    objective_J,
    profit,
    route_flows,
    unserved_human,
    zero_price_plan,
)
from mixed_traffic_planner.planning.models import (
    DEFAULT_GRID_POINTS,
    CandidateRecord,
    Plan,
    PlanEvaluation,
    PlanningProblem,
)
from mixed_traffic_planner.planning.proposition import appendix_transform, proposition_holds
from mixed_traffic_planner.planning.routing import (
    human_fill,
    spare_human_capacity,
    wardrop_consistent,
)
from mixed_traffic_planner.planning.search import (
    brute_force,
    latency_grid,
    latency_step,
    optimize,
    price_grid,
)

__all__ = [
    "DEFAULT_GRID_POINTS",
    "CandidateRecord",
    "Plan",
    "PlanEvaluation",
    "PlanningProblem",
    "appendix_transform",
    "brute_force",
    "evaluate_menu",
    "evaluate_plan",
    "highest_human_road",
    "human_fill",
    "latency_grid",
    "latency_step",
    "objective_J",
    "optimize",
    "price_grid",
    "profit",
    "proposition_holds",
    "route_flows",
    "spare_human_capacity",
    "unserved_human",
    "wardrop_consistent",
    "zero_price_plan",
]
