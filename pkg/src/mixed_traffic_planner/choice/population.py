"""Population models: distributions of the price weight θ across service users.

Three families share one duck-typed interface (``mean``, ``cdf``,
``interval_mass``, ``sample``, ``log_density``, ``quadrature_nodes``):

  - BetaPopulation:       smooth two-parameter family (Uniform = Beta(1, 1))
  - PointMassPopulation:  homogeneous population, every user has the same θ
  - EmpiricalPopulation:  a finite sample set (posterior pools, fallbacks)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special, stats

from mixed_traffic_planner.errors import UnsupportedPrior

# Default number of quadrature nodes for noisy-choice expectations
QUADRATURE_NODES = 512


@dataclass(frozen=True)
class BetaPopulation:
    """θ ~ Beta(alpha, beta_param)."""

    alpha: float
    beta_param: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.beta_param > 0):
            msg = f"Beta parameters must be > 0, got ({self.alpha}, {self.beta_param})"
            raise ValueError(msg)

    @classmethod
    def uniform(cls) -> BetaPopulation:
        return cls(alpha=1.0, beta_param=1.0)

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta_param)

    @property
    def variance(self) -> float:
        total = self.alpha + self.beta_param
        return self.alpha * self.beta_param / (total**2 * (total + 1))

    def cdf(self, x: float) -> float:
        """Regularized incomplete beta function I_x(alpha, beta_param)."""
        return float(special.betainc(self.alpha, self.beta_param, min(max(x, 0.0), 1.0)))

    def interval_mass(self, lo: float, hi: float, lo_closed: bool, hi_closed: bool) -> float:  # noqa: ARG002
        """Probability of θ in the interval (boundaries carry no mass)."""
        return max(0.0, self.cdf(hi) - self.cdf(lo))

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.beta(self.alpha, self.beta_param, size=n)

    def log_density(self, theta: np.ndarray) -> np.ndarray:
        return np.asarray(stats.beta.logpdf(theta, self.alpha, self.beta_param), dtype=float)

    def quadrature_nodes(self, n: int = QUADRATURE_NODES) -> tuple[np.ndarray, np.ndarray]:
        """Equal-weight nodes at the midpoints of n probability slices."""
        return self._nodes(n), np.full(n, 1.0 / n)

    def _nodes(self, n: int) -> np.ndarray:
        levels = (np.arange(n) + 0.5) / n
        return np.asarray(stats.beta.ppf(levels, self.alpha, self.beta_param), dtype=float)


@dataclass(frozen=True)
class PointMassPopulation:
    """A homogeneous population: every user has weight θ."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            msg = f"theta must be in [0, 1], got {self.theta}"
            raise ValueError(msg)

    @property
    def mean(self) -> float:
        return self.theta

    @property
    def variance(self) -> float:
        return 0.0

    def cdf(self, x: float) -> float:
        return 1.0 if x >= self.theta else 0.0

    def interval_mass(self, lo: float, hi: float, lo_closed: bool, hi_closed: bool) -> float:
        inside = lo < self.theta < hi
        on_lo = self.theta == lo and lo_closed
        on_hi = self.theta == hi and hi_closed
        return 1.0 if inside or on_lo or on_hi else 0.0

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:  # noqa: ARG002
        return np.full(n, self.theta)

    def log_density(self, theta: np.ndarray) -> np.ndarray:  # noqa: ARG002
        msg = "A point-mass population has no density to use as a prior"
        raise UnsupportedPrior(msg)

    def quadrature_nodes(self, n: int = QUADRATURE_NODES) -> tuple[np.ndarray, np.ndarray]:  # noqa: ARG002
        return np.array([self.theta]), np.array([1.0])


@dataclass(frozen=True)
class EmpiricalPopulation:
    """A finite set of θ values, each carrying equal mass."""

    thetas: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.thetas:
            raise ValueError("Empirical population needs at least one sample")
        if any(not 0.0 <= t <= 1.0 for t in self.thetas):
            raise ValueError("Empirical samples must lie in [0, 1]")

    @cached_property
    def _sorted(self) -> np.ndarray:
        return np.sort(np.asarray(self.thetas, dtype=float))

    @property
    def mean(self) -> float:
        return float(np.mean(self._sorted))

    @property
    def variance(self) -> float:
        return float(np.var(self._sorted))

    def cdf(self, x: float) -> float:
        return float(np.searchsorted(self._sorted, x, side="right")) / len(self._sorted)

    def interval_mass(self, lo: float, hi: float, lo_closed: bool, hi_closed: bool) -> float:
        left = np.searchsorted(self._sorted, lo, side="left" if lo_closed else "right")
        right = np.searchsorted(self._sorted, hi, side="right" if hi_closed else "left")
        return max(0, int(right) - int(left)) / len(self._sorted)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.choice(self._sorted, size=n, replace=True)

    @cached_property
    def _kde(self) -> stats.gaussian_kde:
        try:
            return stats.gaussian_kde(self._sorted)
        except (np.linalg.LinAlgError, ValueError) as e:
            msg = f"Cannot build a density from {len(self._sorted)} empirical samples: {e}"
            raise UnsupportedPrior(msg) from e

    def log_density(self, theta: np.ndarray) -> np.ndarray:
        kde = self._kde
        with np.errstate(divide="ignore"):
            return np.log(kde(np.atleast_1d(theta)))

    def quadrature_nodes(self, n: int = QUADRATURE_NODES) -> tuple[np.ndarray, np.ndarray]:  # noqa: ARG002
        count = len(self._sorted)
        return self._sorted, np.full(count, 1.0 / count)


type PopulationModel = BetaPopulation | PointMassPopulation | EmpiricalPopulation
