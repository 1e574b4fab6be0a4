"""Learning the population's latency/price trade-off from pairwise queries.

Public API:
  - models: Query, Observation, PosteriorSamples, CandidateGrid, SamplerSettings
  - posterior: answer_likelihood, log_likelihood, mh_posterior, grid_posterior_mean
  - active: candidate_queries, expected_information_gain, select_query,
            select_query_random
  - fit: fit_population, learning_error, beta_from_moments
  - records: read_observations, write_observations, parse_observations,
             format_observations
  - session: elicit_user, infer_user, infer_from_records, simulated_answers,
             format_query, parse_answer, InteractiveSession, Selection,
             UserElicitation

Population models live in ``choice.population`` and are re-exported here.
"""

from mixed_traffic_planner.choice.population import (
    BetaPopulation,
    EmpiricalPopulation,
    PointMassPopulation,
    PopulationModel,
)
from mixed_traffic_planner.learning.active import (
    candidate_queries,
    expected_information_gain,
    select_query,
    select_query_random,
)
from mixed_traffic_planner.learning.fit import (
    VARIANCE_FLOOR,
    beta_from_moments,
    fit_population,
    learning_error,
)
from mixed_traffic_planner.learning.models import (
    CandidateGrid,
    Observation,
    PosteriorSamples,
    Query,
    SamplerSettings,
)
from mixed_traffic_planner.learning.posterior import (
    answer_likelihood,
    grid_posterior_mean,
    log_likelihood,
    mh_posterior,
)
from mixed_traffic_planner.learning.records import (
    format_observations,
    group_by_user,
    parse_observations,
    read_observations,
    write_observations,
)
from mixed_traffic_planner.learning.session import (
    InteractiveSession,
    Selection,
    UserElicitation,
    elicit_user,
    format_query,
    infer_from_records,
    infer_user,
    parse_answer,
    simulated_answers,
)

__all__ = [
    "VARIANCE_FLOOR",
    "BetaPopulation",
    "CandidateGrid",
    "InteractiveSession",
    "EmpiricalPopulation",
    "Observation",
    "PointMassPopulation",
    "PopulationModel",
    "PosteriorSamples",
    "Query",
    "SamplerSettings",
    "Selection",
    "UserElicitation",
    "answer_likelihood",
    "beta_from_moments",
    "candidate_queries",
    "elicit_user",
    "expected_information_gain",
    "fit_population",
    "format_observations",
    "format_query",
    "grid_posterior_mean",
    "group_by_user",
    "infer_from_records",
    "infer_user",
    "learning_error",
    "log_likelihood",
    "mh_posterior",
    "parse_answer",
    "parse_observations",
    "read_observations",
    "select_query",
    "select_query_random",
    "simulated_answers",
    "write_observations",
]
