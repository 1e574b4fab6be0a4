"""Exception hierarchy for the planner.

Every error raised on purpose by this package derives from ``PlannerError`` so
the CLI can map failures onto exit codes without catching unrelated bugs.
"""

from __future__ import annotations


class PlannerError(Exception):
    """Base class for all expected failures."""


# =============================================================================
# Road network
# =============================================================================


class LatencyBelowFreeFlow(PlannerError):
    """A latency below the road's free-flow latency was requested."""


class AutonomousFlowInfeasible(PlannerError):
    """Autonomous flow alone exceeds a road's capacity at the posted latency."""


# =============================================================================
# Preference learning
# =============================================================================


class DegenerateObservations(PlannerError):
    """The posterior target is zero everywhere the sampler can start."""


class UnsupportedPrior(PlannerError):
    """The population model has no usable density for posterior sampling."""


# =============================================================================
# Planner
# =============================================================================


class ZeroDemand(PlannerError):
    """Total demand is zero, so the flow-averaged objective is undefined."""


class Infeasible(PlannerError):
    """No candidate satisfies the profit floor and the flow constraints."""


class SearchSpaceTooLarge(PlannerError):
    """The exhaustive grid exceeds the brute-force candidate limit."""


class InvalidTransform(PlannerError):
    """The latency-lowering price transform cannot be applied to this plan."""


class NotImprovable(InvalidTransform):
    """The highest human-used road already runs at free flow."""


class PriceCapExceeded(InvalidTransform):
    """The price bump pushes some price above the cap."""


class ZeroPriceWeight(InvalidTransform):
    """The homogeneous user ignores price, so no price bump can compensate."""


# =============================================================================
# Configuration and CLI
# =============================================================================


class ConfigError(PlannerError):
    """Base class for experiment-config problems."""


class ConfigParseError(ConfigError):
    """The config file cannot be parsed or contains unknown keys."""


class ConfigValidationError(ConfigError):
    """The config parses but violates a field constraint or invariant."""


class InvalidAnswer(PlannerError):
    """An interactive answer was not one of A, B, a, b."""
