"""Population fitting from per-user posteriors, and the learning-error metric."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from mixed_traffic_planner.choice.aggregate import aggregate_q
from mixed_traffic_planner.choice.models import ChoiceNoise
from mixed_traffic_planner.choice.population import BetaPopulation, EmpiricalPopulation

if TYPE_CHECKING:
    from collections.abc import Sequence

    from mixed_traffic_planner.choice.models import Menu
    from mixed_traffic_planner.choice.population import PopulationModel
    from mixed_traffic_planner.learning.models import PosteriorSamples

# Pooled variance is floored here before moment matching
VARIANCE_FLOOR = 1e-4


def beta_from_moments(mean: float, variance: float) -> BetaPopulation | None:
    """Moment-matched Beta, or None when no Beta has these moments.

    ν = m(1 − m)/s² − 1,  alpha = m·ν,  beta_param = (1 − m)·ν
    """
    variance = max(variance, VARIANCE_FLOOR)
    nu = mean * (1.0 - mean) / variance - 1.0
    if nu <= 0 or not 0.0 < mean < 1.0:
        return None
    return BetaPopulation(alpha=mean * nu, beta_param=(1.0 - mean) * nu)


def fit_population(per_user_posteriors: Sequence[PosteriorSamples]) -> PopulationModel:
    """Pool all users' posterior samples and moment-match a Beta population.

    Falls back to the pooled sample set when the pooled moments admit no Beta.
    Users are pooled in list order, so the result is independent of the order
    in which their posteriors were computed.
    """
    if not per_user_posteriors:
        raise ValueError("fit_population needs at least one posterior")
    pooled = np.concatenate([p.as_array() for p in per_user_posteriors])
    fitted = beta_from_moments(float(pooled.mean()), float(pooled.var()))
    if fitted is not None:
        return fitted
    return EmpiricalPopulation(thetas=tuple(float(t) for t in pooled))


def learning_error(model: PopulationModel, truth: PopulationModel, reference_menu: Menu) -> float:
    """ℓ∞ distance between predicted and true deterministic choice shares on a menu."""
    noise = ChoiceNoise()
    return aggregate_q(model, reference_menu, noise).distance(
        aggregate_q(truth, reference_menu, noise)
    )
