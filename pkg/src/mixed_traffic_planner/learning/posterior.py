"""Bayesian inference of one user's price weight θ from answered queries.

Answer model (noisily rational, logit):

    P(answer = a | θ) = σ((r_a − r_b) / β),   r_a − r_b = c + d·θ

The posterior is sampled with random-walk Metropolis-Hastings on [0, 1]
using Gaussian proposals reflected at the boundaries (a symmetric proposal,
so the acceptance ratio is the target ratio). ``grid_posterior_mean``
integrates the same target on a fine grid and is the reference the sampler
is validated against.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy import special

from mixed_traffic_planner.errors import DegenerateObservations
from mixed_traffic_planner.learning.models import MIN_POSTERIOR_SAMPLES, PosteriorSamples

if TYPE_CHECKING:
    from collections.abc import Sequence

    from mixed_traffic_planner.choice.models import ChoiceNoise
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.learning.models import Observation, Query

# Grid size of the quadrature reference posterior
ORACLE_GRID_NODES = 4096


def answer_likelihood(theta: float, query: Query, answer: int, noise: ChoiceNoise) -> float:
    """Probability that a user with weight θ gives ``answer`` to ``query``."""
    if not noise.beta > 0:
        msg = f"Answer likelihood needs beta > 0, got {noise.beta}"
        raise ValueError(msg)
    c, d = query.reward_gap_terms
    gap = (c + d * theta) / noise.beta
    return float(special.expit(gap if answer == 0 else -gap))


def _observation_arrays(observations: Sequence[Observation]) -> tuple[np.ndarray, np.ndarray]:
    """Signed gap coefficients: the answered option's reward lead is s·(c + d·θ)."""
    c = np.empty(len(observations))
    d = np.empty(len(observations))
    for i, obs in enumerate(observations):
        ci, di = obs.query.reward_gap_terms
        sign = 1.0 if obs.answer == 0 else -1.0
        c[i], d[i] = sign * ci, sign * di
    return c, d


def log_likelihood(
    thetas: np.ndarray, observations: Sequence[Observation], noise: ChoiceNoise
) -> np.ndarray:
    """Log-likelihood of all observations at each θ in ``thetas``."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if not observations:
        return np.zeros_like(thetas)
    c, d = _observation_arrays(observations)
    lead = (c[None, :] + d[None, :] * thetas[:, None]) / noise.beta
    # log σ(x) = −log(1 + e^{−x})
    return -np.logaddexp(0.0, -lead).sum(axis=1)


def _reflect(x: np.ndarray) -> np.ndarray:
    """Fold values back into [0, 1] by mirroring at both ends."""
    y = np.abs(x) % 2.0
    return np.where(y > 1.0, 2.0 - y, y)


def mh_posterior(
    observations: Sequence[Observation],
    prior: PopulationModel,
    noise: ChoiceNoise,
    steps: int,
    burn_in: int,
    proposal_sd: float,
    seed: int,
    chains: int = 1,
) -> PosteriorSamples:
    """Sample one user's posterior over θ with Metropolis-Hastings.

    Independent chains start spread evenly over (0, 1) and advance together;
    post-burn-in samples are pooled chain by chain.

    Args:
        observations: The user's answered queries.
        prior: Population model used as prior density.
        noise: Answer-noise temperature (``noise.beta``).
        steps: Chain length per chain, including burn-in.
        burn_in: Number of leading samples discarded per chain.
        proposal_sd: Standard deviation of the Gaussian random-walk step.
        seed: Seed of the sampler's random stream.
        chains: Number of independent chains.

    Raises:
        DegenerateObservations: if the target density is zero at every start.
    """
    if steps < burn_in + MIN_POSTERIOR_SAMPLES:
        msg = f"steps ({steps}) must be at least burn_in + {MIN_POSTERIOR_SAMPLES}"
        raise ValueError(msg)
    if not proposal_sd > 0:
        msg = f"proposal_sd must be > 0, got {proposal_sd}"
        raise ValueError(msg)
    if chains < 1:
        msg = f"chains must be >= 1, got {chains}"
        raise ValueError(msg)

    rng = np.random.default_rng(seed)
    steps_z = rng.standard_normal((steps, chains)) * proposal_sd
    log_u = np.log(rng.random((steps, chains)))

    def log_target(theta: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return prior.log_density(theta) + log_likelihood(theta, observations, noise)

    current = (np.arange(chains) + 0.5) / chains
    current_lp = log_target(current)
    if not np.all(np.isfinite(current_lp)):
        msg = "Posterior target is zero (or undefined) at the chain starting points"
        raise DegenerateObservations(msg)

    kept = np.empty((steps - burn_in, chains))
    accepted = 0
    for t in range(steps):
        proposal = _reflect(current + steps_z[t])
        proposal_lp = log_target(proposal)
        accept = log_u[t] < proposal_lp - current_lp
        current = np.where(accept, proposal, current)
        current_lp = np.where(accept, proposal_lp, current_lp)
        accepted += int(accept.sum())
        if t >= burn_in:
            kept[t - burn_in] = current

    return PosteriorSamples(
        thetas=tuple(float(x) for x in kept.T.ravel()),
        acceptance_rate=accepted / (steps * chains),
        chain_length=steps,
    )


def grid_posterior_mean(
    observations: Sequence[Observation],
    prior: PopulationModel,
    noise: ChoiceNoise,
    nodes: int = ORACLE_GRID_NODES,
) -> float:
    """Posterior mean of θ by midpoint quadrature on a uniform grid."""
    grid = (np.arange(nodes) + 0.5) / nodes
    with np.errstate(divide="ignore"):
        lp = prior.log_density(grid) + log_likelihood(grid, observations, noise)
    finite = np.isfinite(lp)
    if not finite.any():
        raise DegenerateObservations("Posterior target is zero on the whole grid")
    weights = np.where(finite, np.exp(lp - lp[finite].max()), 0.0)
    return float((grid * weights).sum() / weights.sum())
