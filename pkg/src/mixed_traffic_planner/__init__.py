"""Mixed Traffic Planner - latency and price planning for mixed-autonomy roads.

An operator of an autonomous ride service posts, for each of several parallel
roads, a latency and a price. Service users pick a road by trading latency
against price; human drivers take the quickest road with room. The planner
learns how users trade the two off and picks the menu that minimizes the
flow-averaged travel time under a profit floor.

Architecture::

    network/       Roads and the headway-based capacity law
    choice/        Rewards, user choice (argmax/softmax), population models, q(ℓ, p)
    learning/      Pairwise queries, MH posterior, information-gain selection, fitting
    planning/      Human routing, plan evaluation, grid search, optimality transform
    simulation/    Seeded learn → plan → ride experiments with baselines
    serialization/ JSON records and CSV traces written by the CLI
    store.py       Result files in a metadata envelope (config hash, seed)
    renderers/     Text summary tables (Jinja2)
    flows/         Prefect orchestration of the CLI commands

Data flow: config → learning → planning → simulation → store
"""

__version__ = "0.1.0"

from mixed_traffic_planner.config import Settings
from mixed_traffic_planner.schemas import ExperimentConfig

__all__ = ["ExperimentConfig", "Settings", "__version__"]
