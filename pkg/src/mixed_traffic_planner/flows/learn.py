"""
Prefect flow for learning the service users' preference population.

Three sources of answers, one inference path:
  - simulated: users drawn from the configured ground truth answer by softmax
  - interactive: a person answers each query on the terminal
  - records: answers are read from an observations file

Run locally:
    python -m mixed_traffic_planner.flows.learn configs/canonical.json
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from prefect import flow, task

from mixed_traffic_planner.config import (
    build_candidate_grid,
    build_noise,
    build_population,
    build_reference_menu,
    build_sampler,
)
from mixed_traffic_planner.flows.common import (
    LEARNING_CURVE_PATH,
    OBSERVATIONS_PATH,
    POPULATION_PATH,
    load_experiment_config,
    open_store,
)
from mixed_traffic_planner.learning.active import candidate_queries
from mixed_traffic_planner.learning.fit import fit_population
from mixed_traffic_planner.learning.records import format_observations, read_observations
from mixed_traffic_planner.learning.session import (
    InteractiveSession,
    elicit_user,
    infer_from_records,
)
from mixed_traffic_planner.serialization.records import PopulationRecord
from mixed_traffic_planner.serialization.traces import learning_curve_csv
from mixed_traffic_planner.simulation.compute import elicit_population, sample_population
from mixed_traffic_planner.simulation.experiment import learning_curve
from mixed_traffic_planner.simulation.models import PhaseSeeds

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.learning.models import Observation
    from mixed_traffic_planner.learning.session import AnswerSource
    from mixed_traffic_planner.schemas import ExperimentConfig
    from mixed_traffic_planner.simulation.models import ElicitationOutcome
    from mixed_traffic_planner.store import ResultStore


# =============================================================================
# Elicitation tasks
# =============================================================================


def _prompt(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


@task(name="elicit-simulated")
def elicit_simulated(config: ExperimentConfig) -> ElicitationOutcome:
    """Sample users from the ground truth and elicit each of them."""
    seeds = PhaseSeeds(base=config.seeds.base)
    population = sample_population(
        build_population(config.population), config.simulation.users, seeds.population
    )
    return elicit_population(
        population,
        config.learning.query_budget,
        build_noise(config),
        candidate_queries(build_candidate_grid(config)),
        seeds.elicitation,
        prior=build_population(config.learning.prior),
        sampler=build_sampler(config),
        selection=config.learning.selection,
        checkpoints=config.learning.checkpoints,
    )


def elicit_interactive(
    config: ExperimentConfig, answer: AnswerSource, users: int
) -> tuple[PopulationModel, list[Observation]]:
    """Ask ``users`` people in turn; each answers ``query_budget`` queries."""
    seeds = PhaseSeeds(base=config.seeds.base)
    candidates = candidate_queries(build_candidate_grid(config))
    results = [
        elicit_user(
            uid,
            answer,
            config.learning.query_budget,
            candidates,
            build_population(config.learning.prior),
            build_noise(config),
            build_sampler(config),
            base_seed=seeds.elicitation,
            selection=config.learning.selection,
        )
        for uid in range(users)
    ]
    model = fit_population([r.posterior for r in results])
    return model, [obs for r in results for obs in r.observations]


@task(name="infer-from-records")
def infer_records(config: ExperimentConfig, observations: list[Observation]) -> PopulationModel:
    """Fit the population from recorded answers."""
    model, _ = infer_from_records(
        observations,
        build_population(config.learning.prior),
        build_noise(config),
        build_sampler(config),
        base_seed=PhaseSeeds(base=config.seeds.base).elicitation,
    )
    return model


# =============================================================================
# Output tasks
# =============================================================================


@task(name="write-population")
def write_population(
    store: ResultStore, model: PopulationModel, users: int, query_budget: int, mode: str
) -> Path:
    """Write the fitted population to population.json."""
    record = PopulationRecord.from_domain(model, users=users, query_budget=query_budget)
    return store.write(POPULATION_PATH, record.model_dump(mode="json"), source="learn", mode=mode)


@task(name="write-observations")
def write_observations_file(store: ResultStore, observations: list[Observation]) -> Path:
    """Write collected answers in the records format so the run can be replayed."""
    return store.write_text(OBSERVATIONS_PATH, format_observations(observations))


# =============================================================================
# Flow
# =============================================================================


@flow(name="learn", log_prints=True)
def learn_flow(
    config_path: Path,
    seed: int | None = None,
    out: Path | None = None,
    records: Path | None = None,
    interactive: bool = False,
    users: int = 1,
) -> dict[str, Any]:
    """
    Learn a population model and write it to the output directory.

    Args:
        config_path: Experiment config file.
        seed: Override for ``seeds.base``.
        out: Output directory override.
        records: Learn from this observations file instead of simulating.
        interactive: Ask ``users`` people in turn on stdin/stdout.
        users: Number of interactive respondents.
    """
    config = load_experiment_config(config_path, seed)
    store = open_store(config, out)
    budget = config.learning.query_budget

    if records is not None:
        mode = "records"
        print(f"Reading observations from {records}...")
        observations = read_observations(records)
        model = infer_records(config, observations)
        respondents = len({o.user_id for o in observations})
    elif interactive:
        mode = "interactive"
        print(f"Asking {users} respondent(s) {budget} queries each...")
        session = InteractiveSession(read_line=sys.stdin.readline, write=_prompt)
        model, observations = elicit_interactive(config, session, users)
        respondents = users
        write_observations_file(store, observations)
    else:
        mode = "simulated"
        print(f"Eliciting {config.simulation.users} simulated users, {budget} queries each...")
        outcome = elicit_simulated(config)
        model = outcome.model
        respondents = len(outcome.users)
        write_observations_file(store, [o for u in outcome.users for o in u.observations])
        if config.learning.checkpoints:
            truth = build_population(config.population)
            curve = learning_curve(outcome, truth, build_reference_menu(config))
            store.write_csv(LEARNING_CURVE_PATH, learning_curve_csv(curve))

    path = write_population(store, model, respondents, budget, mode)
    print(f"Learned population (mean θ = {model.mean:.4f}) written to {path}")
    return {"mode": mode, "users": respondents, "mean": model.mean, "path": str(path)}


if __name__ == "__main__":
    learn_flow(Path(sys.argv[1]))
