"""
Configuration management for the application.

Two layers:
  - ``Settings``: environment-based application settings (Pydantic Settings).
  - Experiment configs: JSON/YAML files validated against
    ``schemas.ExperimentConfig``, plus builders that turn a loaded config
    into domain objects (network, planning problem, learning settings).
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Any

import yaml
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from mixed_traffic_planner.choice.models import ChoiceNoise, Menu
from mixed_traffic_planner.choice.population import (
    BetaPopulation,
    EmpiricalPopulation,
    PointMassPopulation,
)
from mixed_traffic_planner.errors import ConfigParseError, ConfigValidationError
from mixed_traffic_planner.learning.models import CandidateGrid, SamplerSettings
from mixed_traffic_planner.network.models import Network, Road
from mixed_traffic_planner.planning.models import PlanningProblem
from mixed_traffic_planner.schemas import (
    BetaPopulationConfig,
    ExperimentConfig,
    PointMassPopulationConfig,
    PopulationConfig,
    SeedsConfig,
)

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.population import PopulationModel

YAML_SUFFIXES = (".yaml", ".yml")


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    Environment variables can be set directly or via a .env file.
    All settings have sensible defaults for local development.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application settings
    app_name: str = Field(default="mixed-traffic-planner", description="Application name")
    app_env: str = Field(
        default="development", description="Environment (development/staging/production)"
    )
    debug: bool = Field(default=False, description="Enable debug mode")

    # Paths
    data_dir: Path = Field(
        default=Path("results"), description="Output directory when neither --out nor the config sets one"
    )


@lru_cache
def get_settings() -> Settings:
    """
    Get cached application settings.

    Returns:
        Settings instance (cached after first call)
    """
    return Settings()


# =============================================================================
# Experiment config files
# =============================================================================


def _format_errors(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def _parse_text(text: str, path: Path) -> Any:
    if path.suffix.lower() in YAML_SUFFIXES:
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            where = f":{mark.line + 1}:{mark.column + 1}" if mark is not None else ""
            msg = f"{path}{where}: invalid YAML: {getattr(e, 'problem', e)}"
            raise ConfigParseError(msg) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        msg = f"{path}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}"
        raise ConfigParseError(msg) from e


def parse_config(data: Any, source: str = "<config>") -> ExperimentConfig:
    """Validate already-parsed config data.

    Raises:
        ConfigParseError: if the data is not a mapping or has unknown keys.
        ConfigValidationError: for any other schema or invariant violation.
    """
    if not isinstance(data, dict):
        msg = f"{source}: top level must be a mapping, got {type(data).__name__}"
        raise ConfigParseError(msg)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        msg = f"{source}: {_format_errors(e)}"
        if any(err["type"] == "extra_forbidden" for err in e.errors()):
            raise ConfigParseError(msg) from e
        raise ConfigValidationError(msg) from e


def load_config(path: Path) -> ExperimentConfig:
    """Load, unit-convert and validate an experiment config file (JSON or YAML)."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"{path}: cannot read config: {e.strerror or e}"
        raise ConfigParseError(msg) from e
    return parse_config(_parse_text(text, path), source=str(path))


def dump_config(config: ExperimentConfig) -> str:
    """Serialize a config (SI units) so that ``load_config`` reproduces it."""
    return json.dumps(config.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def hash_bytes(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical ``dump_config`` text.

    A config and its copy embedded in a result bundle hash the same, as do the
    JSON and YAML spellings of one scenario.
    """
    return hash_bytes(dump_config(config).encode("utf-8"))


def with_seed(config: ExperimentConfig, seed: int | None) -> ExperimentConfig:
    """Config with ``seeds.base`` overridden (unchanged when seed is None)."""
    if seed is None:
        return config
    return config.model_copy(update={"seeds": SeedsConfig(base=seed)})


def resolve_output_dir(config: ExperimentConfig, out: Path | None = None) -> Path:
    """--out wins, then the config's output_dir, then the settings default."""
    if out is not None:
        return out
    if config.output_dir is not None:
        return Path(config.output_dir)
    return get_settings().data_dir


# =============================================================================
# Builders
# =============================================================================


def build_network(config: ExperimentConfig) -> Network:
    """Network sorted by free-flow latency."""
    return Network.from_roads(
        Road(id=i, d=r.length_m, v_bar=r.free_flow_speed_mps, L=r.L, tau_h=r.tau_h, tau_a=r.tau_a)
        for i, r in enumerate(config.network.roads)
    )


def build_population(spec: PopulationConfig) -> PopulationModel:
    if isinstance(spec, BetaPopulationConfig):
        return BetaPopulation(alpha=spec.alpha, beta_param=spec.beta)
    if isinstance(spec, PointMassPopulationConfig):
        return PointMassPopulation(theta=spec.theta)
    return EmpiricalPopulation(thetas=tuple(spec.thetas))


def build_noise(config: ExperimentConfig) -> ChoiceNoise:
    return ChoiceNoise(beta=config.noise.beta, mode=config.noise.mode)


def build_problem(config: ExperimentConfig, population: PopulationModel) -> PlanningProblem:
    """Planning problem for the configured network, demand and bounds."""
    planner = config.planner
    return PlanningProblem(
        network=build_network(config),
        F_h=config.demand.F_h,
        F_a=config.demand.F_a,
        P_min=planner.P_min,
        p_max=planner.p_max,
        ell_max=planner.ell_max,
        population=population,
        noise=build_noise(config),
        ell_pen=planner.ell_pen,
        latency_grid=planner.latency_grid,
        price_grid=planner.price_grid,
    )


def build_candidate_grid(config: ExperimentConfig) -> CandidateGrid:
    grid = config.learning.candidate_grid
    return CandidateGrid(
        latency_min=grid.latency_min,
        latency_max=grid.latency_max,
        price_max=grid.price_max,
        price_min=grid.price_min,
        points=grid.points,
    )


def build_sampler(config: ExperimentConfig) -> SamplerSettings:
    s = config.learning.sampler
    return SamplerSettings(steps=s.steps, burn_in=s.burn_in, proposal_sd=s.proposal_sd, chains=s.chains)


def build_reference_menu(config: ExperimentConfig) -> Menu:
    return Menu.from_pairs([(o.ell, o.price) for o in config.learning.reference_menu])
