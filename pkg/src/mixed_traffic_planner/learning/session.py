"""Per-user elicitation: ask queries, collect answers, update the posterior.

The same loop drives simulated users, recorded answer files and the
interactive terminal mode; only the source of answers differs. Each user owns
the seed ``base_seed + user_id``: it seeds the user's random stream (answers,
random selection) and every posterior run for that user, so the final
posterior depends only on the user's observations and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np

from mixed_traffic_planner.errors import InvalidAnswer
from mixed_traffic_planner.learning.active import select_query, select_query_random
from mixed_traffic_planner.learning.fit import fit_population
from mixed_traffic_planner.learning.models import Observation, SamplerSettings
from mixed_traffic_planner.learning.posterior import answer_likelihood, mh_posterior
from mixed_traffic_planner.learning.records import group_by_user

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Sequence

    from mixed_traffic_planner.choice.models import ChoiceNoise
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.learning.models import PosteriorSamples, Query

type AnswerSource = Callable[[Query], int]


class Selection(StrEnum):
    """How the next query is picked."""

    ACTIVE = "active"
    RANDOM = "random"


@dataclass
class UserElicitation:
    """Everything learned about one user."""

    user_id: int
    observations: list[Observation] = field(default_factory=list)
    # Posterior after each checkpoint budget (number of answered queries)
    checkpoints: dict[int, PosteriorSamples] = field(default_factory=dict)

    @property
    def posterior(self) -> PosteriorSamples:
        """Posterior after the last answered query."""
        return self.checkpoints[max(self.checkpoints)]


def user_seed(base_seed: int, user_id: int) -> int:
    return base_seed + user_id


def infer_user(
    observations: Sequence[Observation],
    prior: PopulationModel,
    noise: ChoiceNoise,
    sampler: SamplerSettings,
    seed: int,
) -> PosteriorSamples:
    """Posterior for one user's observations with the shared sampler settings."""
    return mh_posterior(
        observations,
        prior,
        noise,
        steps=sampler.steps,
        burn_in=sampler.burn_in,
        proposal_sd=sampler.proposal_sd,
        seed=seed,
        chains=sampler.chains,
    )


def elicit_user(
    user_id: int,
    answer: AnswerSource,
    budget: int,
    candidates: Sequence[Query],
    prior: PopulationModel,
    noise: ChoiceNoise,
    sampler: SamplerSettings,
    base_seed: int,
    selection: Selection = Selection.ACTIVE,
    checkpoints: Iterable[int] = (),
) -> UserElicitation:
    """Run ``budget`` rounds of select → answer → update for one user.

    Args:
        user_id: The user's id (also offsets the seed).
        answer: Returns 0 (option a) or 1 (option b) for a query.
        budget: Number of queries to ask (≥ 1).
        candidates: Query design space.
        prior: Prior population model.
        noise: Answer-noise temperature.
        sampler: MH settings.
        base_seed: Elicitation seed; the user uses ``base_seed + user_id``.
        selection: Active (information gain) or uniformly random selection.
        checkpoints: Budgets after which to keep the posterior; the final
            budget is always kept.
    """
    if budget < 1:
        msg = f"query budget must be >= 1, got {budget}"
        raise ValueError(msg)
    seed = user_seed(base_seed, user_id)
    rng = np.random.default_rng(seed)
    keep = {b for b in checkpoints if 1 <= b <= budget} | {budget}

    result = UserElicitation(user_id=user_id)
    posterior = infer_user([], prior, noise, sampler, seed)
    for step in range(1, budget + 1):
        if selection is Selection.ACTIVE:
            query = select_query(posterior, candidates, noise)
        else:
            query = select_query_random(candidates, rng)
        result.observations.append(Observation(user_id=user_id, query=query, answer=answer(query)))
        posterior = infer_user(result.observations, prior, noise, sampler, seed)
        if step in keep:
            result.checkpoints[step] = posterior
    return result


def simulated_answers(theta: float, noise: ChoiceNoise, rng: np.random.Generator) -> AnswerSource:
    """Answer source for a simulated user with weight θ (softmax answers)."""

    def _answer(query: Query) -> int:
        p_a = answer_likelihood(theta, query, 0, noise)
        return 0 if rng.random() < p_a else 1

    return _answer


def infer_from_records(
    observations: Iterable[Observation],
    prior: PopulationModel,
    noise: ChoiceNoise,
    sampler: SamplerSettings,
    base_seed: int,
) -> tuple[PopulationModel, list[PosteriorSamples]]:
    """Fit a population from recorded answers (users folded in id order)."""
    posteriors = [
        infer_user(obs, prior, noise, sampler, user_seed(base_seed, uid))
        for uid, obs in group_by_user(observations).items()
    ]
    if not posteriors:
        raise ValueError("No observations to learn from")
    return fit_population(posteriors), posteriors


# =============================================================================
# Terminal interaction
# =============================================================================


def format_query(query: Query) -> str:
    """One-line prompt for a query."""
    a, b = query.a, query.b
    return (
        f"Option A: ℓ={a.ell:.1f}s, price={a.price:.2f} | "
        f"Option B: ℓ={b.ell:.1f}s, price={b.price:.2f}"
    )


def parse_answer(text: str) -> int:
    """Map an answer line to 0 (A) or 1 (B).

    Raises:
        InvalidAnswer: for anything other than A, B, a or b.
    """
    value = text.strip()
    if value in ("A", "a"):
        return 0
    if value in ("B", "b"):
        return 1
    msg = f"Expected A or B, got {value!r}"
    raise InvalidAnswer(msg)


@dataclass
class InteractiveSession:
    """Answer source backed by a terminal (or any line reader/writer).

    Each query is written as a one-line prompt and the next input line is
    parsed as the answer. Calls are counted so the caller can report progress.
    """

    read_line: Callable[[], str]
    write: Callable[[str], None]
    asked: int = 0

    def __call__(self, query: Query) -> int:
        self.asked += 1
        self.write(f"[{self.asked}] {format_query(query)}\nAnswer (A/B): ")
        line = self.read_line()
        if not line:
            raise InvalidAnswer("Input ended before all queries were answered")
        return parse_answer(line)
