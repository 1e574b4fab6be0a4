"""Grid search over posted menus.

``optimize`` searches the reduced space where roads 0..k all sit at a_k
(the free-flow latency of the slowest human-used road), with grids on the
remaining latencies and on every price. ``brute_force`` enumerates the full
grid and serves as the validation oracle for small networks.

Both fold candidates in a fixed enumeration order and only replace the
incumbent on a strictly lower J, so ties go to the first candidate.
"""

from __future__ import annotations

import itertools
import math
from typing import TYPE_CHECKING

import numpy as np

from mixed_traffic_planner.errors import Infeasible, SearchSpaceTooLarge
from mixed_traffic_planner.planning.evaluate import evaluate_menu
from mixed_traffic_planner.planning.models import CandidateRecord
from mixed_traffic_planner.planning.proposition import proposition_holds

if TYPE_CHECKING:
    from collections.abc import Iterator

    from mixed_traffic_planner.planning.models import Plan, PlanEvaluation, PlanningProblem

# A candidate must beat the incumbent by more than this to replace it
J_TIE_TOLERANCE = 1e-12
BRUTE_FORCE_MAX_ROADS = 3
BRUTE_FORCE_MAX_CANDIDATES = 10**7

type Candidate = tuple[Plan, PlanEvaluation]


def _dedupe(values: np.ndarray) -> tuple[float, ...]:
    out: list[float] = []
    for v in values:
        if not out or not math.isclose(float(v), out[-1], rel_tol=0.0, abs_tol=1e-12):
            out.append(float(v))
    return tuple(out)


def latency_grid(problem: PlanningProblem, road: int) -> tuple[float, ...]:
    """Evenly spaced latencies from a_road up to ell_max."""
    a = problem.network.roads[road].free_flow_latency
    return _dedupe(np.linspace(a, problem.ell_max, problem.latency_grid))


def price_grid(problem: PlanningProblem) -> tuple[float, ...]:
    return _dedupe(np.linspace(0.0, problem.p_max, problem.price_grid))


def latency_step(problem: PlanningProblem) -> float:
    """Largest spacing of any road's latency grid."""
    spans = [problem.ell_max - a for a in problem.network.free_flow_latencies]
    return max(spans) / (problem.latency_grid - 1)


def _better(candidate: PlanEvaluation, incumbent: Candidate | None) -> bool:
    return incumbent is None or candidate.J < incumbent[1].J - J_TIE_TOLERANCE


def reduced_profiles(problem: PlanningProblem) -> Iterator[tuple[int, tuple[float, ...]]]:
    """(k, ℓ) pairs of the reduced space, k ascending then lexicographic."""
    network = problem.network
    for k in range(network.n):
        pinned = (network.roads[k].free_flow_latency,) * (k + 1)
        tails = [latency_grid(problem, j) for j in range(k + 1, network.n)]
        for tail in itertools.product(*tails):
            yield k, pinned + tail


def optimize(problem: PlanningProblem, trace: list[CandidateRecord] | None = None) -> Candidate:
    """Minimal-J feasible plan over the reduced grid.

    Candidates whose human flows break the pinned structure (some human-used
    road above a_k) are kept only as a fallback when no structured candidate
    is feasible.

    Args:
        problem: The planning problem.
        trace: If given, every evaluated candidate is appended to it.

    Raises:
        Infeasible: if no candidate meets the profit floor and capacities.
    """
    prices = price_grid(problem)
    best: Candidate | None = None
    fallback: Candidate | None = None
    for k, ell in reduced_profiles(problem):
        for p in itertools.product(prices, repeat=problem.network.n):
            plan, evaluation = evaluate_menu(problem, ell, p)
            admissible = proposition_holds(plan, problem.network)
            if trace is not None:
                trace.append(_record(k, plan, evaluation, admissible))
            if not evaluation.feasible:
                continue
            if admissible and _better(evaluation, best):
                best = (plan, evaluation)
            elif not admissible and _better(evaluation, fallback):
                fallback = (plan, evaluation)
    chosen = best or fallback
    if chosen is None:
        raise Infeasible("No menu in the reduced grid meets the profit floor and capacities")
    return chosen


def brute_force_grids(problem: PlanningProblem) -> list[tuple[float, ...]]:
    """Per-road latency grids for the exhaustive search.

    Each road gets its own evenly spaced grid plus the free-flow latencies of
    slower roads, so the reduced space is a subset of the full one.
    """
    network = problem.network
    grids: list[tuple[float, ...]] = []
    for i in range(network.n):
        own = latency_grid(problem, i)
        a_i = network.roads[i].free_flow_latency
        pins = [a for a in network.free_flow_latencies[i + 1 :] if a > a_i]
        grids.append(_dedupe(np.array(sorted({*own, *pins}))))
    return grids


def brute_force(
    problem: PlanningProblem,
    trace: list[CandidateRecord] | None = None,
    max_candidates: int = BRUTE_FORCE_MAX_CANDIDATES,
) -> Candidate:
    """Minimal-J feasible plan over the full latency × price grid.

    Raises:
        SearchSpaceTooLarge: for more than three roads or too many candidates.
        Infeasible: if no candidate is feasible.
    """
    n = problem.network.n
    if n > BRUTE_FORCE_MAX_ROADS:
        msg = f"Brute force supports at most {BRUTE_FORCE_MAX_ROADS} roads, got {n}"
        raise SearchSpaceTooLarge(msg)
    grids = brute_force_grids(problem)
    prices = price_grid(problem)
    count = math.prod(len(g) for g in grids) * len(prices) ** n
    if count > max_candidates:
        msg = f"{count} candidates exceed the limit of {max_candidates}"
        raise SearchSpaceTooLarge(msg)

    best: Candidate | None = None
    for ell in itertools.product(*grids):
        for p in itertools.product(prices, repeat=n):
            plan, evaluation = evaluate_menu(problem, ell, p)
            if trace is not None:
                admissible = proposition_holds(plan, problem.network)
                trace.append(_record(evaluation.k, plan, evaluation, admissible))
            if evaluation.feasible and _better(evaluation, best):
                best = (plan, evaluation)
    if best is None:
        raise Infeasible("No menu in the full grid meets the profit floor and capacities")
    return best


def _record(k: int | None, plan: Plan, evaluation: PlanEvaluation, admissible: bool) -> CandidateRecord:
    return CandidateRecord(
        k=k,
        ell=plan.ell.ell,
        p=plan.p,
        J=evaluation.J,
        profit=evaluation.profit,
        feasible=evaluation.feasible,
        admissible=admissible,
    )
