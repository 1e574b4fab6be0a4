"""Versioned JSON records for every artifact the CLI writes.

Records are plain pydantic models holding SI floats and lists; they carry no
presentation logic. ``from_domain`` builds a record from domain objects and
``to_domain`` (where the CLI needs to read one back) rebuilds them.

Float values are written with Python's shortest round-trip repr, so reading
a record back yields bit-identical domain values.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict, Field

from mixed_traffic_planner.choice.models import ChoiceDistribution
from mixed_traffic_planner.choice.population import (
    BetaPopulation,
    EmpiricalPopulation,
    PointMassPopulation,
)
from mixed_traffic_planner.config import build_population
from mixed_traffic_planner.network.models import CongestionProfile, FlowAssignment
from mixed_traffic_planner.planning.models import Plan
from mixed_traffic_planner.planning.proposition import proposition_holds
from mixed_traffic_planner.planning.routing import wardrop_consistent
from mixed_traffic_planner.schemas import (
    BetaPopulationConfig,
    EmpiricalPopulationConfig,
    PointMassPopulationConfig,
    PopulationConfig,
)

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.network.models import Network
    from mixed_traffic_planner.planning.models import PlanEvaluation
    from mixed_traffic_planner.simulation.models import (
        ExperimentReport,
        LearningCurvePoint,
        ReportRow,
        SimulationResult,
    )

# Bump on breaking changes to any record layout
RECORD_VERSION = "1.0"


class _StrictModel(BaseModel):
    """Base for records: reading back a file with unknown keys is an error."""

    model_config = ConfigDict(extra="forbid")


# =============================================================================
# Population
# =============================================================================


def population_to_config(model: PopulationModel) -> PopulationConfig:
    """The config-schema form of a population model."""
    if isinstance(model, BetaPopulation):
        return BetaPopulationConfig(alpha=model.alpha, beta=model.beta_param)
    if isinstance(model, PointMassPopulation):
        return PointMassPopulationConfig(theta=model.theta)
    if isinstance(model, EmpiricalPopulation):
        return EmpiricalPopulationConfig(thetas=list(model.thetas))
    msg = f"Unknown population model: {type(model).__name__}"
    raise TypeError(msg)


class PopulationRecord(_StrictModel):
    """A learned (or true) population with a summary of where it came from."""

    model: PopulationConfig = Field(..., description="Population model, same schema as config")
    mean: float
    variance: float
    users: int = Field(default=0, ge=0)
    query_budget: int = Field(default=0, ge=0)

    @classmethod
    def from_domain(cls, model: PopulationModel, users: int = 0, query_budget: int = 0) -> PopulationRecord:
        return cls(
            model=population_to_config(model),
            mean=model.mean,
            variance=model.variance,
            users=users,
            query_budget=query_budget,
        )

    def to_domain(self) -> PopulationModel:
        return build_population(self.model)


# =============================================================================
# Plan
# =============================================================================


class PlanRecord(_StrictModel):
    """A posted menu, its flows and its evaluation."""

    ell: list[float]
    p: list[float]
    f_h: list[float]
    f_a: list[float]
    q: list[float]
    J: float
    profit: float
    unserved_h: float
    feasible: bool
    profit_ok: bool
    flows_ok: bool
    k: int | None
    proposition_holds: bool
    wardrop_consistent: bool
    autonomy: list[float] = Field(default_factory=list)
    utilization: list[float] = Field(default_factory=list)
    mean_latency_h: float | None = None
    mean_latency_a: float | None = None

    @classmethod
    def from_domain(cls, plan: Plan, evaluation: PlanEvaluation, network: Network) -> PlanRecord:
        return cls(
            ell=list(plan.ell.ell),
            p=list(plan.p),
            f_h=list(plan.f_h),
            f_a=list(plan.f_a),
            q=list(plan.q.q),
            J=evaluation.J,
            profit=evaluation.profit,
            unserved_h=evaluation.unserved_h,
            feasible=evaluation.feasible,
            profit_ok=evaluation.profit_ok,
            flows_ok=evaluation.flows_ok,
            k=evaluation.k,
            proposition_holds=proposition_holds(plan, network),
            wardrop_consistent=wardrop_consistent(plan, network),
            autonomy=list(evaluation.autonomy),
            utilization=list(evaluation.utilization),
            mean_latency_h=evaluation.mean_latency_h,
            mean_latency_a=evaluation.mean_latency_a,
        )

    def to_domain(self) -> Plan:
        return Plan(
            ell=CongestionProfile(ell=tuple(self.ell)),
            p=tuple(self.p),
            flows=FlowAssignment(f_h=tuple(self.f_h), f_a=tuple(self.f_a)),
            q=ChoiceDistribution(q=tuple(self.q)),
        )


# =============================================================================
# Simulation and experiment
# =============================================================================


class SimulationRecord(_StrictModel):
    """Realized outcome of a plan next to its prediction."""

    realized_q: list[float]
    realized_f_h: list[float]
    realized_f_a: list[float]
    realized_J: float
    realized_profit: float
    realized_unserved_h: float
    realized_feasible: bool
    planned_J: float
    planned_profit: float
    planned_unserved_h: float
    J_gap: float
    profit_gap: float
    unserved_gap: float
    q_gap: float
    seeds: dict[str, int] = Field(default_factory=dict)

    @classmethod
    def from_domain(cls, result: SimulationResult) -> SimulationRecord:
        return cls(
            realized_q=list(result.realized_q.q),
            realized_f_h=list(result.realized_flows.f_h),
            realized_f_a=list(result.realized_flows.f_a),
            realized_J=result.realized.J,
            realized_profit=result.realized.profit,
            realized_unserved_h=result.realized.unserved_h,
            realized_feasible=result.realized.feasible,
            planned_J=result.planned.J,
            planned_profit=result.planned.profit,
            planned_unserved_h=result.planned.unserved_h,
            J_gap=result.J_gap,
            profit_gap=result.profit_gap,
            unserved_gap=result.unserved_gap,
            q_gap=result.q_gap,
            seeds=result.seeds.as_dict() if result.seeds is not None else {},
        )


class RowRecord(_StrictModel):
    name: str
    plan: PlanRecord
    simulation: SimulationRecord | None = None

    @classmethod
    def from_domain(cls, row: ReportRow, network: Network) -> RowRecord:
        return cls(
            name=row.name,
            plan=PlanRecord.from_domain(row.plan, row.evaluation, network),
            simulation=SimulationRecord.from_domain(row.realized) if row.realized else None,
        )


class CurvePointRecord(_StrictModel):
    budget: int
    learning_error: float

    @classmethod
    def from_domain(cls, point: LearningCurvePoint) -> CurvePointRecord:
        return cls(budget=point.budget, learning_error=point.learning_error)


class ExperimentRecord(_StrictModel):
    """The comparison table, learning curve and fitted model of one run."""

    rows: list[RowRecord]
    learning_curve: list[CurvePointRecord]
    learned_model: PopulationRecord
    queries_to_error: dict[str, int | None] | None = None
    baseline_flagged: bool = False
    seeds: dict[str, int] = Field(default_factory=dict)

    @classmethod
    def from_domain(cls, report: ExperimentReport, network: Network) -> ExperimentRecord:
        return cls(
            rows=[RowRecord.from_domain(r, network) for r in report.rows],
            learning_curve=[CurvePointRecord.from_domain(p) for p in report.learning_curve],
            learned_model=PopulationRecord.from_domain(report.learned_model),
            queries_to_error=report.queries_to_error,
            baseline_flagged=report.baseline_flagged,
            seeds=report.seeds.as_dict(),
        )


class ResultBundle(_StrictModel):
    """Everything needed to reproduce and audit an experiment run.

    ``config`` is the validated config in SI units; loading it back and
    re-running with ``seed`` reproduces the bundle.
    """

    version: str = RECORD_VERSION
    config_hash: str
    seed: int
    config: dict[str, object]
    report: ExperimentRecord
    traces: list[str] = Field(default_factory=list, description="Trace CSV file names")
