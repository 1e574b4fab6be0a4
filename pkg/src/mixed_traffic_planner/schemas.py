"""
Experiment configuration schema.

Pydantic models for the experiment config file (JSON or YAML). Every node
forbids unknown keys, and units are converted to SI on the way in, so a
loaded config only ever holds meters, seconds and meters per second.

Example road entry::

    {"length_km": 1.0, "free_flow_speed_kmh": 90, "L": 5, "tau_h": 2, "tau_a": 1}
"""

from __future__ import annotations

from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from mixed_traffic_planner.choice.models import ChoiceMode
from mixed_traffic_planner.learning.models import MIN_POSTERIOR_SAMPLES
from mixed_traffic_planner.learning.session import Selection

# =============================================================================
# Base
# =============================================================================


class _StrictModel(BaseModel):
    """Base for config nodes: unknown keys are rejected, values are immutable."""

    model_config = ConfigDict(extra="forbid", frozen=True)


def _convert(data: dict[str, Any], si_key: str, alt_key: str, factor: float) -> None:
    """Replace ``alt_key`` by ``si_key`` (scaled), requiring exactly one of the two."""
    has_si, has_alt = si_key in data, alt_key in data
    if has_si and has_alt:
        msg = f"give either {si_key} or {alt_key}, not both"
        raise ValueError(msg)
    if has_alt:
        data[si_key] = float(data.pop(alt_key)) * factor


# =============================================================================
# Network
# =============================================================================


class RoadConfig(_StrictModel):
    """One road. Units: meters, seconds, meters per second."""

    length_m: float = Field(..., gt=0, description="Road length d")
    free_flow_speed_mps: float = Field(..., gt=0, description="Free-flow speed v_bar")
    L: float = Field(default=5.0, gt=0, description="Vehicle length (m)")
    tau_h: float = Field(default=2.0, gt=0, description="Human headway time (s)")
    tau_a: float = Field(default=1.0, gt=0, description="Autonomous headway time (s)")

    @model_validator(mode="before")
    @classmethod
    def _to_si(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        _convert(data, "length_m", "length_km", 1000.0)
        _convert(data, "free_flow_speed_mps", "free_flow_speed_kmh", 1000.0 / 3600.0)
        return data

    @field_validator("tau_a")
    @classmethod
    def _platoon_headway(cls, v: float, info: ValidationInfo) -> float:
        tau_h = info.data.get("tau_h")
        if tau_h is not None and v > tau_h:
            msg = f"tau_a ({v}) must not exceed tau_h ({tau_h})"
            raise ValueError(msg)
        return v

    @property
    def free_flow_latency(self) -> float:
        return self.length_m / self.free_flow_speed_mps


class NetworkConfig(_StrictModel):
    roads: list[RoadConfig] = Field(..., min_length=1)


# =============================================================================
# Demand, planner, population, noise
# =============================================================================


class DemandConfig(_StrictModel):
    F_h: float = Field(..., ge=0, description="Human-driven demand (veh/s)")
    F_a: float = Field(..., ge=0, description="Autonomous-service demand (veh/s)")


class PlannerConfig(_StrictModel):
    P_min: float = Field(default=0.0, ge=0, description="Profit floor (currency/s)")
    p_max: float = Field(..., ge=0, description="Price cap")
    ell_max: float = Field(..., gt=0, description="Latency cap (s)")
    ell_pen: float | None = Field(default=None, gt=0, description="Penalty latency (s)")
    latency_grid: int = Field(default=9, ge=2)
    price_grid: int = Field(default=9, ge=2)


class BetaPopulationConfig(_StrictModel):
    kind: Literal["beta"] = "beta"
    alpha: float = Field(..., gt=0)
    beta: float = Field(..., gt=0)


class PointMassPopulationConfig(_StrictModel):
    kind: Literal["point_mass"] = "point_mass"
    theta: float = Field(..., ge=0, le=1)


class EmpiricalPopulationConfig(_StrictModel):
    kind: Literal["empirical"] = "empirical"
    thetas: list[Annotated[float, Field(ge=0, le=1)]] = Field(..., min_length=1)


PopulationConfig = Annotated[
    BetaPopulationConfig | PointMassPopulationConfig | EmpiricalPopulationConfig,
    Field(discriminator="kind"),
]


class NoiseConfig(_StrictModel):
    beta: float = Field(default=0.5, gt=0, description="Softmax temperature")
    mode: ChoiceMode = ChoiceMode.DETERMINISTIC


# =============================================================================
# Learning and simulation
# =============================================================================


class CandidateGridConfig(_StrictModel):
    """Latency/price grid the pairwise queries are drawn from."""

    latency_min: float = Field(..., gt=0)
    latency_max: float = Field(..., gt=0)
    price_min: float = Field(default=0.0, ge=0)
    price_max: float = Field(..., ge=0)
    points: int = Field(default=8, ge=2)

    @model_validator(mode="after")
    def _non_empty(self) -> CandidateGridConfig:
        # Frontier pairs need a strictly faster and a strictly pricier option
        if self.latency_max <= self.latency_min or self.price_max <= self.price_min:
            msg = "candidate grid is empty: need latency_max > latency_min and price_max > price_min"
            raise ValueError(msg)
        return self


class SamplerConfig(_StrictModel):
    steps: int = Field(default=600, ge=1)
    burn_in: int = Field(default=200, ge=0)
    proposal_sd: float = Field(default=0.1, gt=0)
    chains: int = Field(default=8, ge=1)

    @model_validator(mode="after")
    def _enough_samples(self) -> SamplerConfig:
        if self.steps < self.burn_in + MIN_POSTERIOR_SAMPLES:
            msg = f"steps ({self.steps}) must be at least burn_in + {MIN_POSTERIOR_SAMPLES}"
            raise ValueError(msg)
        return self


class MenuOptionConfig(_StrictModel):
    ell: float = Field(..., gt=0)
    price: float = Field(..., ge=0)


class LearningConfig(_StrictModel):
    query_budget: int = Field(default=20, ge=1)
    checkpoints: list[int] = Field(default_factory=list, description="Budgets on the error curve")
    candidate_grid: CandidateGridConfig
    sampler: SamplerConfig = Field(default_factory=SamplerConfig)
    prior: PopulationConfig = Field(default_factory=lambda: BetaPopulationConfig(alpha=1.0, beta=1.0))
    reference_menu: list[MenuOptionConfig] = Field(..., min_length=2)
    selection: Selection = Selection.ACTIVE
    compare_random: bool = False
    target_error: float = Field(default=0.05, gt=0)

    @field_validator("checkpoints")
    @classmethod
    def _positive_sorted(cls, v: list[int]) -> list[int]:
        if any(b < 1 for b in v):
            raise ValueError("checkpoint budgets must be >= 1")
        return sorted(set(v))

    @field_validator("prior")
    @classmethod
    def _has_density(cls, v: PopulationConfig) -> PopulationConfig:
        # The posterior sampler evaluates the prior density at every step
        if isinstance(v, PointMassPopulationConfig):
            raise ValueError("a point_mass prior has no density; use beta or empirical")
        if isinstance(v, EmpiricalPopulationConfig) and len(set(v.thetas)) < 2:
            raise ValueError("an empirical prior needs at least two distinct thetas")
        return v


class SimulationConfig(_StrictModel):
    users: int = Field(default=50, ge=1)


class SeedsConfig(_StrictModel):
    base: int = Field(default=0, ge=0)


# =============================================================================
# Root
# =============================================================================


class ExperimentConfig(_StrictModel):
    """Root of the experiment config file."""

    network: NetworkConfig
    demand: DemandConfig
    planner: PlannerConfig
    population: PopulationConfig
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    learning: LearningConfig
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    seeds: SeedsConfig = Field(default_factory=SeedsConfig)
    output_dir: str | None = None

    @model_validator(mode="after")
    def _planner_bounds(self) -> ExperimentConfig:
        slowest = max(r.free_flow_latency for r in self.network.roads)
        if self.planner.ell_max < slowest:
            msg = f"planner.ell_max ({self.planner.ell_max}) must be >= slowest free-flow latency ({slowest:.6g})"
            raise ValueError(msg)
        pen = self.planner.ell_pen
        if pen is not None and pen <= self.planner.ell_max:
            msg = f"planner.ell_pen ({pen}) must exceed planner.ell_max ({self.planner.ell_max})"
            raise ValueError(msg)
        for b in self.learning.checkpoints:
            if b > self.learning.query_budget:
                msg = f"learning.checkpoints: {b} exceeds query_budget ({self.learning.query_budget})"
                raise ValueError(msg)
        return self
