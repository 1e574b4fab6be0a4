"""Choice-model data models."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from mixed_traffic_planner.network.models import Network

# Two rewards closer than this are a tie; the lowest option index wins.
REWARD_TIE_TOLERANCE = 1e-9

# Probability vectors must sum to one within this tolerance.
PROBABILITY_TOLERANCE = 1e-9


class ChoiceMode(StrEnum):
    """How service users pick from a menu."""

    DETERMINISTIC = "deterministic"
    NOISY = "noisy"


@dataclass(frozen=True)
class WeightVector:
    """A user's latency/price trade-off, ω = (1 − θ, θ)."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            msg = f"theta must be in [0, 1], got {self.theta}"
            raise ValueError(msg)

    @property
    def omega_latency(self) -> float:
        """ω₁, the weight on latency."""
        return 1.0 - self.theta

    @property
    def omega_price(self) -> float:
        """ω₂, the weight on price."""
        return self.theta


@dataclass(frozen=True)
class MenuOption:
    """One ride option: a road, its posted latency and its price."""

    road_id: int
    ell: float
    price: float

    def __post_init__(self) -> None:
        if self.price < 0:
            msg = f"Option on road {self.road_id}: price must be >= 0, got {self.price}"
            raise ValueError(msg)
        if not self.ell > 0:
            msg = f"Option on road {self.road_id}: latency must be > 0, got {self.ell}"
            raise ValueError(msg)


@dataclass(frozen=True)
class Menu:
    """The posted menu, one option per road in network order."""

    options: tuple[MenuOption, ...]

    def __post_init__(self) -> None:
        if not self.options:
            raise ValueError("Menu needs at least one option")

    @classmethod
    def from_vectors(cls, ell: Sequence[float], price: Sequence[float]) -> Menu:
        """Build a menu from latency and price vectors (option i on road i)."""
        if len(ell) != len(price):
            raise ValueError("Latency and price vectors must have the same length")
        return cls(
            options=tuple(
                MenuOption(road_id=i, ell=float(e), price=float(p))
                for i, (e, p) in enumerate(zip(ell, price, strict=True))
            )
        )

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, float]]) -> Menu:
        """Build a menu from ``(latency, price)`` pairs."""
        return cls.from_vectors([e for e, _ in pairs], [p for _, p in pairs])

    def __len__(self) -> int:
        return len(self.options)

    @property
    def latencies(self) -> tuple[float, ...]:
        return tuple(o.ell for o in self.options)

    @property
    def prices(self) -> tuple[float, ...]:
        return tuple(o.price for o in self.options)

    def check_against(self, network: Network) -> None:
        """Raise ValueError unless options align with the network's roads."""
        if len(self.options) != network.n:
            msg = f"Menu has {len(self.options)} options for {network.n} roads"
            raise ValueError(msg)
        for i, (option, road) in enumerate(zip(self.options, network.roads, strict=True)):
            if option.road_id != i:
                msg = f"Option {i} is for road {option.road_id}"
                raise ValueError(msg)
            if option.ell < road.free_flow_latency - 1e-9:
                msg = f"Option {i}: latency {option.ell} below free flow {road.free_flow_latency}"
                raise ValueError(msg)


@dataclass(frozen=True)
class ChoiceDistribution:
    """Fraction of service users choosing each menu option."""

    q: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(x < 0 for x in self.q):
            raise ValueError("Choice probabilities must be non-negative")
        if not math.isclose(math.fsum(self.q), 1.0, abs_tol=PROBABILITY_TOLERANCE):
            msg = f"Choice probabilities must sum to 1, got {math.fsum(self.q)}"
            raise ValueError(msg)

    def __len__(self) -> int:
        return len(self.q)

    def distance(self, other: ChoiceDistribution) -> float:
        """ℓ∞ distance to another distribution over the same options."""
        return max(abs(a - b) for a, b in zip(self.q, other.q, strict=True))


@dataclass(frozen=True)
class ChoiceNoise:
    """Noisy-rationality setting: softmax temperature and choice mode."""

    beta: float = 0.5
    mode: ChoiceMode = ChoiceMode.DETERMINISTIC

    def __post_init__(self) -> None:
        if self.mode is ChoiceMode.NOISY and not self.beta > 0:
            msg = f"Noisy choice needs beta > 0, got {self.beta}"
            raise ValueError(msg)
        if self.beta < 0:
            msg = f"beta must be >= 0, got {self.beta}"
            raise ValueError(msg)

    @property
    def is_noisy(self) -> bool:
        return self.mode is ChoiceMode.NOISY


@dataclass(frozen=True)
class ChoiceInterval:
    """A maximal θ-interval on which the same option wins.

    ``lo == hi`` marks a single indifference point won by an option that loses
    on both sides of it.
    """

    lo: float
    hi: float
    option: int
    lo_closed: bool
    hi_closed: bool

    def contains(self, theta: float) -> bool:
        if self.lo < theta < self.hi:
            return True
        return (theta == self.lo and self.lo_closed) or (theta == self.hi and self.hi_closed)
