"""Choice behavior of autonomous-service users over (latency, price) menus.

Public API:
  - models: WeightVector, MenuOption, Menu, ChoiceDistribution, ChoiceNoise,
            ChoiceMode, ChoiceInterval
  - reward: reward, dominated_set, choice_argmax, choice_softmax,
            choice_intervals, option_at, sample_user_choice, choose_many
  - aggregate: aggregate_q
  - population: BetaPopulation, PointMassPopulation, EmpiricalPopulation,
                PopulationModel
"""

from mixed_traffic_planner.choice.aggregate import aggregate_q
from mixed_traffic_planner.choice.models import (
    REWARD_TIE_TOLERANCE,
    ChoiceDistribution,
    ChoiceInterval,
    ChoiceMode,
    ChoiceNoise,
    Menu,
    MenuOption,
    WeightVector,
)
from mixed_traffic_planner.choice.population import (
    BetaPopulation,
    EmpiricalPopulation,
    PointMassPopulation,
    PopulationModel,
)
from mixed_traffic_planner.choice.reward import (
    choice_argmax,
    choice_intervals,
    choice_softmax,
    choose_many,
    dominated_set,
    indifference_points,
    option_at,
    reward,
    rewards,
    sample_user_choice,
)

__all__ = [
    "REWARD_TIE_TOLERANCE",
    "BetaPopulation",
    "ChoiceDistribution",
    "ChoiceInterval",
    "ChoiceMode",
    "ChoiceNoise",
    "EmpiricalPopulation",
    "Menu",
    "MenuOption",
    "PointMassPopulation",
    "PopulationModel",
    "WeightVector",
    "aggregate_q",
    "choice_argmax",
    "choice_intervals",
    "choice_softmax",
    "choose_many",
    "dominated_set",
    "indifference_points",
    "option_at",
    "reward",
    "rewards",
    "sample_user_choice",
]
