"""Closed-loop experiment: learn the population, plan, simulate, compare.

Pipeline (all seeds derived from ``seeds.base``):

    truth → sample_population → elicitation → optimize(fitted model)
          → simulate_choices → evaluate_realized

alongside two baselines planned on the same problem: the zero-price menu at
free-flow latencies, and an oracle planner that knows the true population.
Every row is scored under the true population so the J column compares like
with like.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from mixed_traffic_planner.config import (
    build_candidate_grid,
    build_noise,
    build_population,
    build_problem,
    build_reference_menu,
    build_sampler,
)
from mixed_traffic_planner.learning.active import candidate_queries
from mixed_traffic_planner.learning.fit import learning_error
from mixed_traffic_planner.learning.session import Selection
from mixed_traffic_planner.planning.evaluate import evaluate_menu, zero_price_plan
from mixed_traffic_planner.planning.proposition import proposition_holds
from mixed_traffic_planner.planning.search import optimize
from mixed_traffic_planner.simulation.compute import (
    elicit_population,
    evaluate_realized,
    sample_population,
    simulate_choices,
)
from mixed_traffic_planner.simulation.models import (
    ExperimentReport,
    LearningCurvePoint,
    PhaseSeeds,
    ReportRow,
)

if TYPE_CHECKING:
    from mixed_traffic_planner.choice.models import Menu
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.planning.models import CandidateRecord, Plan, PlanningProblem
    from mixed_traffic_planner.schemas import ExperimentConfig
    from mixed_traffic_planner.simulation.models import ElicitationOutcome, Population

ROW_ZERO_PRICE = "zero_price"
ROW_LEARNED = "learned"
ROW_ORACLE = "oracle"


def learning_curve(
    outcome: ElicitationOutcome, truth: PopulationModel, reference_menu: Menu
) -> tuple[LearningCurvePoint, ...]:
    """Learning error of the fitted population at each checkpoint budget."""
    return tuple(
        LearningCurvePoint(budget=b, learning_error=learning_error(model, truth, reference_menu))
        for b, model in sorted(outcome.checkpoint_models.items())
    )


def queries_to_error(curve: tuple[LearningCurvePoint, ...], target: float) -> int | None:
    """Smallest budget whose learning error is at or below ``target``."""
    for point in curve:
        if point.learning_error <= target:
            return point.budget
    return None


def _row(
    name: str,
    plan: Plan,
    truth_problem: PlanningProblem,
    population: Population,
    seeds: PhaseSeeds,
) -> ReportRow:
    # Score the posted menu under the true population
    scored, evaluation = evaluate_menu(truth_problem, plan.ell.ell, plan.p)
    empirical_q, _ = simulate_choices(population, scored.menu, truth_problem.noise, seeds.choices)
    return ReportRow(
        name=name,
        plan=scored,
        evaluation=evaluation,
        proposition_holds=proposition_holds(scored, truth_problem.network),
        realized=evaluate_realized(truth_problem, scored, empirical_q, seeds),
    )


def run_experiment(
    config: ExperimentConfig, trace: list[CandidateRecord] | None = None
) -> ExperimentReport:
    """Run the full pipeline for one config (seeded by ``config.seeds.base``).

    Args:
        config: Validated experiment config.
        trace: If given, receives the learned planner's candidate evaluations.
    """
    seeds = PhaseSeeds(base=config.seeds.base)
    learning = config.learning
    truth = build_population(config.population)
    prior = build_population(learning.prior)
    noise = build_noise(config)
    sampler = build_sampler(config)
    reference_menu = build_reference_menu(config)
    candidates = candidate_queries(build_candidate_grid(config))

    population = sample_population(truth, config.simulation.users, seeds.population)
    # The comparison needs the error after every single query
    checkpoints = range(1, learning.query_budget + 1) if learning.compare_random else learning.checkpoints
    outcome = elicit_population(
        population,
        learning.query_budget,
        noise,
        candidates,
        seeds.elicitation,
        prior=prior,
        sampler=sampler,
        selection=learning.selection,
        checkpoints=checkpoints,
    )
    curve = learning_curve(outcome, truth, reference_menu)

    comparison: dict[str, int | None] | None = None
    if learning.compare_random:
        curves = {learning.selection: curve}
        for strategy in Selection:
            if strategy in curves:
                continue
            seed = seeds.random_selection if strategy is Selection.RANDOM else seeds.elicitation
            other = elicit_population(
                population,
                learning.query_budget,
                noise,
                candidates,
                seed,
                prior=prior,
                sampler=sampler,
                selection=strategy,
                checkpoints=checkpoints,
            )
            curves[strategy] = learning_curve(other, truth, reference_menu)
        comparison = {
            str(strategy): queries_to_error(curves[strategy], learning.target_error) for strategy in Selection
        }

    truth_problem = build_problem(config, truth)
    zero_plan, zero_eval = zero_price_plan(truth_problem)
    learned_plan, _ = optimize(truth_problem.with_population(outcome.model), trace=trace)
    oracle_plan, _ = optimize(truth_problem)

    rows = (
        _row(ROW_ZERO_PRICE, zero_plan, truth_problem, population, seeds),
        _row(ROW_LEARNED, learned_plan, truth_problem, population, seeds),
        _row(ROW_ORACLE, oracle_plan, truth_problem, population, seeds),
    )
    return ExperimentReport(
        rows=rows,
        learning_curve=curve,
        learned_model=outcome.model,
        seeds=seeds,
        queries_to_error=comparison,
        baseline_flagged=not zero_eval.flows_ok,
    )
