"""Active query selection by expected information gain.

For a binary query the information the answer carries about θ is

    IG = H(E_θ[P(a | θ)]) − E_θ[H(P(a | θ))]     (bits)

with the expectation taken over posterior samples. Greedy selection asks the
candidate with the largest IG next.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy import special

from mixed_traffic_planner.learning.models import Query

if TYPE_CHECKING:
    from collections.abc import Sequence

    from mixed_traffic_planner.choice.models import ChoiceNoise
    from mixed_traffic_planner.learning.models import CandidateGrid, PosteriorSamples

# Gains below this are treated as zero (selection ties go to the earlier candidate)
GAIN_TOLERANCE = 1e-12

# Posterior samples used per gain evaluation; larger posteriors are thinned evenly
MAX_GAIN_SAMPLES = 512


def candidate_queries(grid: CandidateGrid) -> list[Query]:
    """All frontier pairs on the grid: option a strictly faster and strictly pricier."""
    options = [(float(ell), float(p)) for ell in grid.latencies for p in grid.prices]
    return [
        Query.from_values(ell_a, p_a, ell_b, p_b)
        for ell_a, p_a in options
        for ell_b, p_b in options
        if ell_a < ell_b and p_a > p_b
    ]


def _binary_entropy(p: np.ndarray) -> np.ndarray:
    """Entropy in bits of a Bernoulli(p) answer."""
    return -(special.xlogy(p, p) + special.xlogy(1.0 - p, 1.0 - p)) / np.log(2.0)


def _thinned(posterior: PosteriorSamples, max_samples: int) -> np.ndarray:
    thetas = posterior.as_array()
    if len(thetas) <= max_samples:
        return thetas
    idx = np.linspace(0, len(thetas) - 1, max_samples).round().astype(int)
    return thetas[idx]


def _gains(
    thetas: np.ndarray, queries: Sequence[Query], noise: ChoiceNoise
) -> np.ndarray:
    terms = np.array([q.reward_gap_terms for q in queries], dtype=float).reshape(-1, 2)
    c, d = terms[:, 0], terms[:, 1]
    p_a = special.expit((c[:, None] + d[:, None] * thetas[None, :]) / noise.beta)
    gains = _binary_entropy(p_a.mean(axis=1)) - _binary_entropy(p_a).mean(axis=1)
    return np.where(gains > GAIN_TOLERANCE, gains, 0.0)


def expected_information_gain(
    posterior: PosteriorSamples,
    query: Query,
    noise: ChoiceNoise,
    max_samples: int = MAX_GAIN_SAMPLES,
) -> float:
    """Mutual information (bits) between the answer to ``query`` and θ."""
    return float(_gains(_thinned(posterior, max_samples), [query], noise)[0])


def select_query(
    posterior: PosteriorSamples,
    candidate_queries: Sequence[Query],
    noise: ChoiceNoise,
    max_samples: int = MAX_GAIN_SAMPLES,
) -> Query:
    """The candidate with the largest expected information gain (first among ties)."""
    if not candidate_queries:
        raise ValueError("select_query needs at least one candidate")
    gains = _gains(_thinned(posterior, max_samples), candidate_queries, noise)
    best = int(np.argmax(gains >= gains.max() - GAIN_TOLERANCE))
    return candidate_queries[best]


def select_query_random(candidate_queries: Sequence[Query], rng: np.random.Generator) -> Query:
    """A uniformly random candidate (the non-adaptive baseline)."""
    if not candidate_queries:
        raise ValueError("select_query_random needs at least one candidate")
    return candidate_queries[int(rng.integers(len(candidate_queries)))]
