"""
Prefect flow for planning the posted menu from a learned population.

Run locally:
    python -m mixed_traffic_planner.flows.plan configs/canonical.json
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from prefect import flow, task

from mixed_traffic_planner.config import build_population, build_problem
from mixed_traffic_planner.flows.common import (
    CANDIDATES_PATH,
    PLAN_PATH,
    POPULATION_PATH,
    load_experiment_config,
    open_store,
)
from mixed_traffic_planner.planning.search import optimize
from mixed_traffic_planner.serialization.records import PlanRecord, PopulationRecord
from mixed_traffic_planner.serialization.traces import candidates_csv
from mixed_traffic_planner.store import read_envelope

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.planning.models import CandidateRecord, Plan, PlanEvaluation, PlanningProblem
    from mixed_traffic_planner.store import ResultStore


@task(name="load-population")
def load_population(path: Path) -> PopulationModel:
    """Read a population.json written by the learn flow."""
    return PopulationRecord.model_validate(read_envelope(path)["data"]).to_domain()


@task(name="optimize-menu")
def optimize_menu(problem: PlanningProblem) -> tuple[Plan, PlanEvaluation, list[CandidateRecord]]:
    """Run the reduced grid search, returning the candidate trace with the result."""
    trace: list[CandidateRecord] = []
    plan, evaluation = optimize(problem, trace=trace)
    return plan, evaluation, trace


@task(name="write-plan")
def write_plan(store: ResultStore, record: PlanRecord, model_path: Path) -> Path:
    return store.write(PLAN_PATH, record.model_dump(mode="json"), source="plan", model=model_path.name)


@flow(name="plan", log_prints=True)
def plan_flow(
    config_path: Path,
    seed: int | None = None,
    out: Path | None = None,
    model_path: Path | None = None,
    use_truth: bool = False,
) -> dict[str, Any]:
    """
    Optimize latencies and prices and write plan.json and candidates.csv.

    Args:
        config_path: Experiment config file.
        seed: Override for ``seeds.base``.
        out: Output directory override.
        model_path: Population file; defaults to population.json in the
            output directory.
        use_truth: Plan with the configured ground-truth population instead.
    """
    config = load_experiment_config(config_path, seed)
    store = open_store(config, out)

    if use_truth:
        source = Path("truth")
        population = build_population(config.population)
    else:
        source = model_path if model_path is not None else store.base / POPULATION_PATH
        print(f"Loading population from {source}...")
        population = load_population(source)

    problem = build_problem(config, population)
    plan, evaluation, trace = optimize_menu(problem)
    print(f"Evaluated {len(trace)} candidates; best J = {evaluation.J:.3f}s, profit = {evaluation.profit:.3f}")

    record = PlanRecord.from_domain(plan, evaluation, problem.network)
    path = write_plan(store, record, source)
    store.write_csv(CANDIDATES_PATH, candidates_csv(trace, problem.network.n))
    print(f"Plan written to {path} (proposition holds: {record.proposition_holds})")
    return {"J": evaluation.J, "profit": evaluation.profit, "path": str(path)}


if __name__ == "__main__":
    plan_flow(Path(sys.argv[1]))
