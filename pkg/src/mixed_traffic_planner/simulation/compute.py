"""Simulation phases as pure functions of their inputs and seeds."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from mixed_traffic_planner.choice.models import ChoiceDistribution
from mixed_traffic_planner.choice.population import BetaPopulation
from mixed_traffic_planner.choice.reward import choose_many
from mixed_traffic_planner.learning.active import candidate_queries
from mixed_traffic_planner.learning.fit import fit_population
from mixed_traffic_planner.learning.models import SamplerSettings
from mixed_traffic_planner.learning.session import (
    Selection,
    elicit_user,
    simulated_answers,
    user_seed,
)
from mixed_traffic_planner.planning.evaluate import evaluate_plan, route_flows
from mixed_traffic_planner.planning.models import Plan
from mixed_traffic_planner.simulation.models import ElicitationOutcome, Population, SimulationResult

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from mixed_traffic_planner.choice.models import ChoiceNoise, Menu
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.learning.models import CandidateGrid, Query
    from mixed_traffic_planner.planning.models import PlanningProblem
    from mixed_traffic_planner.simulation.models import PhaseSeeds

# Stream key separating a simulated user's answers from the elicitation stream
ANSWER_STREAM = 1


def sample_population(truth: PopulationModel, n_users: int, seed: int) -> Population:
    """Draw ``n_users`` i.i.d. weights from the ground truth."""
    if n_users < 1:
        msg = f"n_users must be >= 1, got {n_users}"
        raise ValueError(msg)
    rng = np.random.default_rng(seed)
    draws = np.clip(truth.sample(n_users, rng), 0.0, 1.0)
    return Population(thetas=tuple(float(t) for t in draws))


def elicit_population(
    population: Population,
    query_budget: int,
    noise: ChoiceNoise,
    candidates: Sequence[Query],
    seed: int,
    prior: PopulationModel | None = None,
    sampler: SamplerSettings | None = None,
    selection: Selection = Selection.ACTIVE,
    checkpoints: Iterable[int] = (),
) -> ElicitationOutcome:
    """Elicit every user in id order and fit the population at each checkpoint.

    User ``u`` uses seed ``seed + u``; its simulated answers come from a
    separate stream keyed on the same seed.
    """
    prior = prior if prior is not None else BetaPopulation.uniform()
    sampler = sampler if sampler is not None else SamplerSettings()
    budgets = sorted({b for b in checkpoints if 1 <= b <= query_budget} | {query_budget})

    users = []
    for uid, theta in enumerate(population.thetas):
        answers_rng = np.random.default_rng([user_seed(seed, uid), ANSWER_STREAM])
        users.append(
            elicit_user(
                uid,
                simulated_answers(theta, noise, answers_rng),
                query_budget,
                candidates,
                prior,
                noise,
                sampler,
                base_seed=seed,
                selection=selection,
                checkpoints=budgets,
            )
        )

    models = {b: fit_population([u.checkpoints[b] for u in users]) for b in budgets}
    return ElicitationOutcome(model=models[query_budget], users=tuple(users), checkpoint_models=models)


def elicitation_phase(
    population: Population,
    query_budget: int,
    noise: ChoiceNoise,
    grid: CandidateGrid,
    seed: int,
    prior: PopulationModel | None = None,
    sampler: SamplerSettings | None = None,
) -> PopulationModel:
    """Actively elicit every user on the grid's frontier queries and fit a population."""
    if query_budget < 1:
        msg = f"query_budget must be >= 1, got {query_budget}"
        raise ValueError(msg)
    outcome = elicit_population(
        population, query_budget, noise, candidate_queries(grid), seed, prior=prior, sampler=sampler
    )
    return outcome.model


def simulate_choices(
    population: Population, menu: Menu, noise: ChoiceNoise, seed: int
) -> tuple[ChoiceDistribution, np.ndarray]:
    """Every user picks an option; returns empirical frequencies and the picks."""
    rng = np.random.default_rng(seed)
    choices = choose_many(np.asarray(population.thetas), menu, noise, rng)
    counts = np.bincount(choices, minlength=len(menu))
    q = counts / population.user_count
    return ChoiceDistribution(q=tuple(float(x) for x in q)), choices


def evaluate_realized(
    problem: PlanningProblem,
    plan: Plan,
    empirical_q: ChoiceDistribution,
    seeds: PhaseSeeds | None = None,
) -> SimulationResult:
    """Re-route under the realized choices and compare with the plan's prediction."""
    flows = route_flows(problem.network, plan.ell, empirical_q, problem.F_h, problem.F_a)
    realized_plan = Plan(ell=plan.ell, p=plan.p, flows=flows, q=empirical_q)
    return SimulationResult(
        realized_q=empirical_q,
        realized_flows=flows,
        realized=evaluate_plan(problem, realized_plan),
        planned=evaluate_plan(problem, plan),
        q_gap=empirical_q.distance(plan.q),
        seeds=seeds,
    )
