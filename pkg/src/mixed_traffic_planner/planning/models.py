"""Planner data models."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

from mixed_traffic_planner.choice.models import ChoiceNoise, Menu

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.models import ChoiceDistribution
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.network.models import CongestionProfile, FlowAssignment, Network

# Default grid resolution per dimension for the planner search
DEFAULT_GRID_POINTS = 9


@dataclass(frozen=True)
class PlanningProblem:
    """Everything the operator needs to choose latencies and prices.

    Attributes:
        network: The sorted parallel network.
        F_h: Human-driven demand (veh/s), inelastic.
        F_a: Autonomous-service demand (veh/s), fully served.
        P_min: Profit floor (currency/s).
        p_max: Price cap.
        ell_max: Latency cap (s), at least the slowest free-flow latency.
        population: Distribution of θ over service users.
        noise: Choice mode used to predict q.
        ell_pen: Penalty latency charged per unit of unserved human demand;
            defaults to 2·ell_max.
        latency_grid: Grid points per free road latency.
        price_grid: Grid points per road price.
    """

    network: Network
    F_h: float
    F_a: float
    P_min: float
    p_max: float
    ell_max: float
    population: PopulationModel
    noise: ChoiceNoise = field(default_factory=ChoiceNoise)
    ell_pen: float | None = None
    latency_grid: int = DEFAULT_GRID_POINTS
    price_grid: int = DEFAULT_GRID_POINTS

    def __post_init__(self) -> None:
        if self.ell_pen is None:
            object.__setattr__(self, "ell_pen", 2.0 * self.ell_max)
        if self.F_h < 0 or self.F_a < 0:
            raise ValueError("Demands must be non-negative")
        if self.P_min < 0:
            raise ValueError("Profit floor must be non-negative")
        if self.p_max < 0:
            raise ValueError("Price cap must be non-negative")
        slowest = max(self.network.free_flow_latencies)
        if self.ell_max < slowest:
            msg = f"ell_max ({self.ell_max}) must be >= slowest free-flow latency ({slowest})"
            raise ValueError(msg)
        if not self.penalty_latency > self.ell_max:
            msg = f"ell_pen ({self.ell_pen}) must exceed ell_max ({self.ell_max})"
            raise ValueError(msg)
        if self.latency_grid < 2 or self.price_grid < 2:
            raise ValueError("Grids need at least 2 points per dimension")

    @property
    def penalty_latency(self) -> float:
        assert self.ell_pen is not None
        return self.ell_pen

    @property
    def total_demand(self) -> float:
        return self.F_h + self.F_a

    def with_population(self, population: PopulationModel) -> PlanningProblem:
        return replace(self, population=population)


@dataclass(frozen=True)
class Plan:
    """A posted menu with the flows it induces."""

    ell: CongestionProfile
    p: tuple[float, ...]
    flows: FlowAssignment
    q: ChoiceDistribution

    @property
    def f_h(self) -> tuple[float, ...]:
        return self.flows.f_h

    @property
    def f_a(self) -> tuple[float, ...]:
        return self.flows.f_a

    @property
    def menu(self) -> Menu:
        return Menu.from_vectors(self.ell.ell, self.p)


@dataclass(frozen=True)
class PlanEvaluation:
    """Objective, profit and feasibility of a plan.

    ``k`` is the highest road index carrying human flow (None if none).
    ``autonomy`` and ``utilization`` are per road; the mean latencies are
    None when the corresponding mode carries no flow.
    """

    J: float
    profit: float
    unserved_h: float
    feasible: bool
    k: int | None
    profit_ok: bool
    flows_ok: bool
    autonomy: tuple[float, ...] = ()
    utilization: tuple[float, ...] = ()
    mean_latency_h: float | None = None
    mean_latency_a: float | None = None


@dataclass(frozen=True)
class CandidateRecord:
    """One evaluated search candidate, for the candidate-evaluation trace."""

    k: int | None
    ell: tuple[float, ...]
    p: tuple[float, ...]
    J: float
    profit: float
    feasible: bool
    admissible: bool
