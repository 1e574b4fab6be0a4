"""
Prefect flow for simulating the ground-truth population against a plan.

Run locally:
    python -m mixed_traffic_planner.flows.simulate configs/canonical.json
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from prefect import flow, task

from mixed_traffic_planner.config import build_population, build_problem
from mixed_traffic_planner.flows.common import (
    CHOICES_PATH,
    PLAN_PATH,
    SIMULATION_PATH,
    load_experiment_config,
    open_store,
)
from mixed_traffic_planner.serialization.records import PlanRecord, SimulationRecord
from mixed_traffic_planner.serialization.traces import choices_csv
from mixed_traffic_planner.simulation.compute import (
    evaluate_realized,
    sample_population,
    simulate_choices,
)
from mixed_traffic_planner.simulation.models import PhaseSeeds
from mixed_traffic_planner.store import read_envelope

if TYPE_CHECKING:
    from mixed_traffic_planner.planning.models import Plan


@task(name="load-plan")
def load_plan(path: Path) -> Plan:
    """Read a plan.json written by the plan flow."""
    return PlanRecord.model_validate(read_envelope(path)["data"]).to_domain()


@flow(name="simulate", log_prints=True)
def simulate_flow(
    config_path: Path,
    seed: int | None = None,
    out: Path | None = None,
    plan_path: Path | None = None,
) -> dict[str, Any]:
    """
    Let the sampled population ride on a plan; write simulation.json and choices.csv.

    Args:
        config_path: Experiment config file.
        seed: Override for ``seeds.base``.
        out: Output directory override.
        plan_path: Plan file; defaults to plan.json in the output directory.
    """
    config = load_experiment_config(config_path, seed)
    store = open_store(config, out)
    source = plan_path if plan_path is not None else store.base / PLAN_PATH
    print(f"Loading plan from {source}...")
    plan = load_plan(source)

    seeds = PhaseSeeds(base=config.seeds.base)
    truth = build_population(config.population)
    problem = build_problem(config, truth)
    plan.ell.check_against(problem.network)
    population = sample_population(truth, config.simulation.users, seeds.population)
    empirical_q, choices = simulate_choices(population, plan.menu, problem.noise, seeds.choices)
    result = evaluate_realized(problem, plan, empirical_q, seeds)

    record = SimulationRecord.from_domain(result)
    path = store.write(SIMULATION_PATH, record.model_dump(mode="json"), source="simulate", plan=source.name)
    store.write_csv(CHOICES_PATH, choices_csv(population.thetas, choices))
    print(
        f"Realized J = {record.realized_J:.3f}s (planned {record.planned_J:.3f}s), "
        f"q gap = {record.q_gap:.4f}; written to {path}"
    )
    return {"realized_J": record.realized_J, "q_gap": record.q_gap, "path": str(path)}


if __name__ == "__main__":
    simulate_flow(Path(sys.argv[1]))
