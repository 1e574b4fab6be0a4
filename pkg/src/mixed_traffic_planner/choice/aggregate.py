"""Population-level choice distribution q(ℓ, p)."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy import special

from mixed_traffic_planner.choice.models import ChoiceDistribution, ChoiceNoise, Menu
from mixed_traffic_planner.choice.population import (
    QUADRATURE_NODES,
    EmpiricalPopulation,
    PopulationModel,
)
from mixed_traffic_planner.choice.reward import choice_intervals


def _as_population(dist: PopulationModel | Sequence[float] | np.ndarray) -> PopulationModel:
    if isinstance(dist, Sequence | np.ndarray):
        return EmpiricalPopulation(thetas=tuple(float(t) for t in dist))
    return dist


def aggregate_q(
    dist: PopulationModel | Sequence[float] | np.ndarray,
    menu: Menu,
    noise: ChoiceNoise,
    nodes: int = QUADRATURE_NODES,
) -> ChoiceDistribution:
    """Fraction of the population choosing each option.

    Deterministic mode integrates the population over the interval partition
    from ``choice_intervals`` (exact for Beta and point masses, exact counting
    for sample sets). Noisy mode averages softmax probabilities over the
    population's quadrature nodes (sample sets use their samples).

    Args:
        dist: A population model, or a raw sequence of θ samples.
        menu: The posted menu.
        noise: Choice mode and softmax temperature.
        nodes: Quadrature nodes for smooth populations in noisy mode.
    """
    population = _as_population(dist)
    q = np.zeros(len(menu))
    if len(menu) == 1:
        return ChoiceDistribution(q=(1.0,))

    if noise.is_noisy:
        thetas, weights = population.quadrature_nodes(nodes)
        ell = np.asarray(menu.latencies)
        price = np.asarray(menu.prices)
        table = -(1.0 - thetas)[:, None] * ell[None, :] - thetas[:, None] * price[None, :]
        probs = special.softmax(table / noise.beta, axis=1)
        q = weights @ probs
    else:
        for interval in choice_intervals(menu):
            q[interval.option] += population.interval_mass(
                interval.lo, interval.hi, interval.lo_closed, interval.hi_closed
            )

    q = np.clip(q, 0.0, None)
    q = q / q.sum()
    return ChoiceDistribution(q=tuple(float(x) for x in q))
