"""
Pytest configuration and shared fixtures.

This file is automatically loaded by pytest and provides fixtures
available to all test files.
"""

from __future__ import annotations

import copy
import json
from pathlib import Path
from typing import Any

import pytest

from mixed_traffic_planner.choice.population import BetaPopulation
from mixed_traffic_planner.config import Settings, get_settings
from mixed_traffic_planner.network.models import Network, Road
from mixed_traffic_planner.planning.models import PlanningProblem

# Road geometry of the canonical desk scenario: a = (40, 50, 66.7) s
CANONICAL_SPEEDS = (25.0, 20.0, 15.0)

# =============================================================================
# Environment Fixtures
# =============================================================================


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """
    Ensure clean environment for each test.

    This fixture runs automatically for all tests to prevent
    environment variable leakage between tests.
    """
    # Clear any cached settings
    get_settings.cache_clear()


@pytest.fixture
def test_settings(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Settings:
    """
    Create test settings with a temporary output directory.

    Use this fixture when you need settings that don't affect
    the real filesystem.
    """
    monkeypatch.setenv("APP_ENV", "test")
    monkeypatch.setenv("DEBUG", "true")
    monkeypatch.setenv("DATA_DIR", str(tmp_path / "results"))

    get_settings.cache_clear()
    return get_settings()


# =============================================================================
# Domain Fixtures
# =============================================================================


def make_road(v_bar: float = 20.0, d: float = 1000.0, road_id: int = 0, **kwargs: float) -> Road:
    """Road with the canonical geometry (L=5, tau_h=2, tau_a=1) unless overridden."""
    params = {"L": 5.0, "tau_h": 2.0, "tau_a": 1.0, **kwargs}
    return Road(id=road_id, d=d, v_bar=v_bar, **params)


def make_network(*speeds: float, d: float = 1000.0) -> Network:
    return Network.from_roads(make_road(v, d=d, road_id=i) for i, v in enumerate(speeds))


@pytest.fixture
def road() -> Road:
    """d=1000 m, v_bar=20 m/s, so a=50 s."""
    return make_road()


@pytest.fixture
def canonical_network() -> Network:
    return make_network(*CANONICAL_SPEEDS)


@pytest.fixture
def canonical_problem(canonical_network: Network) -> PlanningProblem:
    """Canonical scenario with small grids so searches stay fast."""
    return PlanningProblem(
        network=canonical_network,
        F_h=0.5,
        F_a=0.3,
        P_min=0.2,
        p_max=10.0,
        ell_max=120.0,
        population=BetaPopulation(alpha=2.0, beta_param=2.0),
        latency_grid=4,
        price_grid=4,
    )


# =============================================================================
# Config Fixtures
# =============================================================================

CANONICAL_CONFIG: dict[str, Any] = {
    "network": {
        "roads": [
            {"length_m": 1000, "free_flow_speed_mps": 25, "L": 5, "tau_h": 2, "tau_a": 1},
            {"length_m": 1000, "free_flow_speed_mps": 20, "L": 5, "tau_h": 2, "tau_a": 1},
            {"length_m": 1000, "free_flow_speed_mps": 15, "L": 5, "tau_h": 2, "tau_a": 1},
        ]
    },
    "demand": {"F_h": 0.5, "F_a": 0.3},
    "planner": {"P_min": 0.2, "p_max": 10, "ell_max": 120, "latency_grid": 9, "price_grid": 9},
    "population": {"kind": "beta", "alpha": 2, "beta": 2},
    "noise": {"beta": 0.5, "mode": "deterministic"},
    "learning": {
        "query_budget": 20,
        "checkpoints": [1, 2, 5, 10, 15, 20],
        "candidate_grid": {
            "latency_min": 40,
            "latency_max": 120,
            "price_min": 0,
            "price_max": 10,
            "points": 8,
        },
        "sampler": {"steps": 600, "burn_in": 200, "proposal_sd": 0.1, "chains": 8},
        "prior": {"kind": "beta", "alpha": 1, "beta": 1},
        "reference_menu": [
            {"ell": 40, "price": 8},
            {"ell": 55, "price": 4},
            {"ell": 70, "price": 1},
        ],
        "selection": "active",
        "compare_random": False,
        "target_error": 0.05,
    },
    "simulation": {"users": 50},
    "seeds": {"base": 0},
}


def small_config_data() -> dict[str, Any]:
    """Canonical scenario shrunk to run in seconds: few users, queries and grid points."""
    data = copy.deepcopy(CANONICAL_CONFIG)
    data["planner"].update({"latency_grid": 3, "price_grid": 3})
    data["learning"].update(
        {
            "query_budget": 3,
            "checkpoints": [1, 3],
            "sampler": {"steps": 150, "burn_in": 50, "proposal_sd": 0.1, "chains": 2},
        }
    )
    data["learning"]["candidate_grid"]["points"] = 4
    data["simulation"]["users"] = 4
    return data


@pytest.fixture
def canonical_config_data() -> dict[str, Any]:
    return copy.deepcopy(CANONICAL_CONFIG)


@pytest.fixture
def write_config(tmp_path: Path):
    """
    Factory fixture writing config data to a JSON file.

    Usage:
        def test_something(write_config):
            path = write_config({"network": ...})
    """

    def _write(data: dict[str, Any], name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2))
        return path

    return _write


@pytest.fixture
def small_config_file(write_config) -> Path:
    """Shrunk canonical scenario on disk, writing results under tmp_path/out."""
    data = small_config_data()
    return write_config(data, "small.json")


# =============================================================================
# Marker Configurations
# =============================================================================


def pytest_configure(config: pytest.Config) -> None:
    """Configure custom pytest markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow running")
    config.addinivalue_line("markers", "integration: marks integration tests")
    config.addinivalue_line("markers", "unit: marks unit tests")
