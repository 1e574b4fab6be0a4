"""Simulation data models: populations, realized outcomes and experiment reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.models import ChoiceDistribution
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.learning.session import UserElicitation
    from mixed_traffic_planner.network.models import FlowAssignment
    from mixed_traffic_planner.planning.models import Plan, PlanEvaluation

# Offsets of each phase's seed from the experiment's base seed
ELICITATION_SEED_OFFSET = 10_000
CHOICES_SEED_OFFSET = 20_000
RANDOM_SELECTION_SEED_OFFSET = 30_000


@dataclass(frozen=True)
class PhaseSeeds:
    """Seeds of every experiment phase, all derived from one base seed."""

    base: int

    @property
    def population(self) -> int:
        return self.base

    @property
    def elicitation(self) -> int:
        return self.base + ELICITATION_SEED_OFFSET

    @property
    def choices(self) -> int:
        return self.base + CHOICES_SEED_OFFSET

    @property
    def random_selection(self) -> int:
        return self.base + RANDOM_SELECTION_SEED_OFFSET

    def as_dict(self) -> dict[str, int]:
        return {
            "base": self.base,
            "population": self.population,
            "elicitation": self.elicitation,
            "choices": self.choices,
            "random_selection": self.random_selection,
        }


@dataclass(frozen=True)
class Population:
    """Ground-truth θ of each simulated service user (user id = position)."""

    thetas: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.thetas:
            raise ValueError("Population needs at least one user")
        if any(not 0.0 <= t <= 1.0 for t in self.thetas):
            raise ValueError("User weights must lie in [0, 1]")

    @property
    def user_count(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class ElicitationOutcome:
    """Result of eliciting a whole population.

    ``checkpoint_models`` maps each checkpoint budget to the population fitted
    from every user's posterior after that many answers; ``model`` is the fit
    at the full budget.
    """

    model: PopulationModel
    users: tuple[UserElicitation, ...]
    checkpoint_models: dict[int, PopulationModel] = field(default_factory=dict)


@dataclass(frozen=True)
class SimulationResult:
    """Realized outcome of a posted plan, next to what the planner predicted."""

    realized_q: ChoiceDistribution
    realized_flows: FlowAssignment
    realized: PlanEvaluation
    planned: PlanEvaluation
    q_gap: float
    seeds: PhaseSeeds | None = None

    @property
    def J_gap(self) -> float:
        return self.realized.J - self.planned.J

    @property
    def profit_gap(self) -> float:
        return self.realized.profit - self.planned.profit

    @property
    def unserved_gap(self) -> float:
        return self.realized.unserved_h - self.planned.unserved_h


@dataclass(frozen=True)
class ReportRow:
    """One planner variant in the comparison table."""

    name: str
    plan: Plan
    evaluation: PlanEvaluation
    proposition_holds: bool
    realized: SimulationResult | None = None


@dataclass(frozen=True)
class LearningCurvePoint:
    budget: int
    learning_error: float


@dataclass(frozen=True)
class ExperimentReport:
    """Everything one experiment run produces.

    ``queries_to_error`` maps a selection strategy to the smallest query budget
    whose fitted population reaches the target learning error (None if the
    budget never does); the whole mapping is None when the comparison is off.
    ``baseline_flagged`` is set when the zero-price baseline is infeasible.
    """

    rows: tuple[ReportRow, ...]
    learning_curve: tuple[LearningCurvePoint, ...]
    learned_model: PopulationModel
    seeds: PhaseSeeds
    queries_to_error: dict[str, int | None] | None = None
    baseline_flagged: bool = False

    def row(self, name: str) -> ReportRow:
        for r in self.rows:
            if r.name == name:
                return r
        msg = f"No report row named {name!r}"
        raise KeyError(msg)
