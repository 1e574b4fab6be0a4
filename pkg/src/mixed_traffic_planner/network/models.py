"""Road network data models and constants."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

# Absolute tolerance for latency and flow comparisons (SI units)
TOLERANCE = 1e-9


@dataclass(frozen=True)
class Road:
    """A single road of the parallel network, in SI units.

    Attributes:
        id: Position of the road in the sorted network.
        d: Length in meters.
        v_bar: Free-flow speed in meters per second.
        L: Effective vehicle length including the minimum gap, in meters.
        tau_h: Headway time kept by human drivers, in seconds.
        tau_a: Headway time kept by platooning autonomous vehicles, in seconds.
    """

    id: int
    d: float
    v_bar: float
    L: float
    tau_h: float
    tau_a: float

    def __post_init__(self) -> None:
        for name in ("d", "v_bar", "L", "tau_h", "tau_a"):
            if not getattr(self, name) > 0:
                msg = f"Road {self.id}: {name} must be > 0, got {getattr(self, name)}"
                raise ValueError(msg)
        if self.tau_a > self.tau_h:
            msg = f"Road {self.id}: tau_a ({self.tau_a}) must not exceed tau_h ({self.tau_h})"
            raise ValueError(msg)

    @property
    def free_flow_latency(self) -> float:
        """Travel time at free-flow speed, a = d / v_bar."""
        return self.d / self.v_bar


@dataclass(frozen=True)
class Network:
    """Parallel roads sorted ascending by free-flow latency."""

    roads: tuple[Road, ...]

    def __post_init__(self) -> None:
        if not self.roads:
            raise ValueError("Network needs at least one road")
        for position, road in enumerate(self.roads):
            if road.id != position:
                msg = f"Road at position {position} has id {road.id}; use Network.from_roads"
                raise ValueError(msg)
        latencies = self.free_flow_latencies
        if any(a > b for a, b in zip(latencies, latencies[1:], strict=False)):
            raise ValueError("Roads must be sorted by free-flow latency")

    @classmethod
    def from_roads(cls, roads: Iterable[Road]) -> Network:
        """Sort roads by free-flow latency (stable) and re-index their ids."""
        ordered = sorted(roads, key=lambda r: r.free_flow_latency)
        return cls(roads=tuple(replace(r, id=i) for i, r in enumerate(ordered)))

    @property
    def n(self) -> int:
        """Number of roads."""
        return len(self.roads)

    @property
    def free_flow_latencies(self) -> tuple[float, ...]:
        """The vector a of free-flow latencies, in road order."""
        return tuple(r.free_flow_latency for r in self.roads)


@dataclass(frozen=True)
class CongestionProfile:
    """Posted per-road latencies, in seconds."""

    ell: tuple[float, ...]

    def check_against(self, network: Network) -> None:
        """Raise ValueError unless the profile fits the network (length, ℓ ≥ a)."""
        if len(self.ell) != network.n:
            msg = f"Expected {network.n} latencies, got {len(self.ell)}"
            raise ValueError(msg)
        for road, ell in zip(network.roads, self.ell, strict=True):
            if ell < road.free_flow_latency - TOLERANCE:
                msg = f"Road {road.id}: latency {ell} below free flow {road.free_flow_latency}"
                raise ValueError(msg)


@dataclass(frozen=True)
class FlowAssignment:
    """Human-driven and autonomous flows per road, in vehicles per second."""

    f_h: tuple[float, ...]
    f_a: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.f_h) != len(self.f_a):
            raise ValueError("f_h and f_a must have the same length")
        if any(f < 0 for f in (*self.f_h, *self.f_a)):
            raise ValueError("Flows must be non-negative")

    @property
    def total(self) -> tuple[float, ...]:
        """Per-road total flow fʰ + fᵃ."""
        return tuple(h + a for h, a in zip(self.f_h, self.f_a, strict=True))


def as_tuple(values: Sequence[float]) -> tuple[float, ...]:
    """Coerce a numeric sequence (list, tuple, numpy array) to a float tuple."""
    return tuple(float(v) for v in values)
