"""Preference-learning data models."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mixed_traffic_planner.choice.models import Menu, MenuOption

# Minimum number of post-burn-in samples a chain must produce
MIN_POSTERIOR_SAMPLES = 100


@dataclass(frozen=True)
class Query:
    """A pairwise question: which of two ride options do you prefer?"""

    a: MenuOption
    b: MenuOption

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("A query needs two distinct options")

    @classmethod
    def from_values(cls, ell_a: float, p_a: float, ell_b: float, p_b: float) -> Query:
        return cls(
            a=MenuOption(road_id=0, ell=ell_a, price=p_a),
            b=MenuOption(road_id=1, ell=ell_b, price=p_b),
        )

    def as_menu(self) -> Menu:
        return Menu(options=(self.a, self.b))

    @property
    def reward_gap_terms(self) -> tuple[float, float]:
        """(c, d) such that r_a − r_b = c + d·θ."""
        c = self.b.ell - self.a.ell
        d = (self.a.ell - self.b.ell) + (self.b.price - self.a.price)
        return c, d


@dataclass(frozen=True)
class Observation:
    """One answered query: ``answer`` is 0 for option a, 1 for option b."""

    user_id: int
    query: Query
    answer: int

    def __post_init__(self) -> None:
        if self.answer not in (0, 1):
            msg = f"answer must be 0 or 1, got {self.answer}"
            raise ValueError(msg)


@dataclass(frozen=True)
class PosteriorSamples:
    """Posterior draws of θ for one user (uniform weights)."""

    thetas: tuple[float, ...]
    acceptance_rate: float = 1.0
    chain_length: int = 0

    def __post_init__(self) -> None:
        if not self.thetas:
            raise ValueError("Posterior needs at least one sample")
        if any(not 0.0 <= t <= 1.0 for t in self.thetas):
            raise ValueError("Posterior samples must lie in [0, 1]")

    @classmethod
    def point_mass(cls, theta: float, count: int = MIN_POSTERIOR_SAMPLES) -> PosteriorSamples:
        return cls(thetas=(theta,) * count)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.thetas, dtype=float)

    @property
    def mean(self) -> float:
        return float(np.mean(self.as_array()))


@dataclass(frozen=True)
class CandidateGrid:
    """Design space for queries: each option's latency and price on a grid."""

    latency_min: float
    latency_max: float
    price_max: float
    price_min: float = 0.0
    points: int = 8

    def __post_init__(self) -> None:
        if self.points < 2:
            msg = f"Candidate grid needs at least 2 points per axis, got {self.points}"
            raise ValueError(msg)
        if not 0 < self.latency_min < self.latency_max:
            raise ValueError("Candidate grid needs 0 < latency_min < latency_max")
        if not 0 <= self.price_min < self.price_max:
            raise ValueError("Candidate grid needs 0 <= price_min < price_max")

    @property
    def latencies(self) -> np.ndarray:
        return np.linspace(self.latency_min, self.latency_max, self.points)

    @property
    def prices(self) -> np.ndarray:
        return np.linspace(self.price_min, self.price_max, self.points)


@dataclass(frozen=True)
class SamplerSettings:
    """Metropolis-Hastings settings shared by every per-user inference run."""

    steps: int = 600
    burn_in: int = 200
    proposal_sd: float = 0.1
    chains: int = 8

    def __post_init__(self) -> None:
        if self.steps < self.burn_in + MIN_POSTERIOR_SAMPLES:
            msg = f"steps ({self.steps}) must be at least burn_in + {MIN_POSTERIOR_SAMPLES}"
            raise ValueError(msg)
        if not self.proposal_sd > 0:
            raise ValueError("proposal_sd must be > 0")
        if self.chains < 1:
            raise ValueError("chains must be >= 1")
