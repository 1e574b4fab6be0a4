"""Tasks shared by every flow: config loading and the result store."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from prefect import task

from mixed_traffic_planner.config import config_hash, load_config, resolve_output_dir, with_seed
from mixed_traffic_planner.store import ResultStore

if TYPE_CHECKING:
    from mixed_traffic_planner.schemas import ExperimentConfig

POPULATION_PATH = Path("population.json")
OBSERVATIONS_PATH = Path("observations.csv")
LEARNING_CURVE_PATH = Path("learning_curve.csv")
PLAN_PATH = Path("plan.json")
CANDIDATES_PATH = Path("candidates.csv")
SIMULATION_PATH = Path("simulation.json")
CHOICES_PATH = Path("choices.csv")
EXPERIMENT_PATH = Path("experiment.json")
SUMMARY_PATH = Path("summary.txt")


@task(name="load-config")
def load_experiment_config(config_path: Path, seed: int | None = None) -> ExperimentConfig:
    """Load and validate the config, applying a --seed override."""
    return with_seed(load_config(config_path), seed)


def open_store(config: ExperimentConfig, out: Path | None) -> ResultStore:
    """Result store for this run, stamped with the config hash and base seed."""
    return ResultStore(resolve_output_dir(config, out), config_hash(config), config.seeds.base)
