from src.analysis.classification import RoutingStructure, classify
from src.analysis.elastic import admitted_rate, elastic_transform, overflow_marginal
from src.analysis.examples import (
    ExampleFamily,
    default_params,
    generate_example,
    myopic_general_costs,
)
from src.analysis.poa import (
    marginal_shape,
    poa_bound_check,
    price_of_anarchy,
    ratio_from_reports,
)
from src.analysis.properties import PropertySuite, TrialOutcome, run_trial, run_trials
from src.analysis.sweep import DEFAULT_SWEEP_PARAM, sweep, sweep_point

__all__ = [
    "DEFAULT_SWEEP_PARAM",
    "ExampleFamily",
    "PropertySuite",
    "RoutingStructure",
    "TrialOutcome",
    "admitted_rate",
    "classify",
    "default_params",
    "elastic_transform",
    "generate_example",
    "marginal_shape",
    "myopic_general_costs",
    "overflow_marginal",
    "poa_bound_check",
    "price_of_anarchy",
    "ratio_from_reports",
    "run_trial",
    "run_trials",
    "sweep",
    "sweep_point",
]
