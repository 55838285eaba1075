from src.scenario.costs import build_marginal, fit_linearly, to_spec
from src.scenario.loader import (
    Problem,
    compile_scenario,
    dumps,
    load,
    load_problem,
    loads,
    save,
)
from src.scenario.models import (
    SCHEMA_VERSION,
    AffineShiftedCost,
    BreakpointCost,
    ConstantCost,
    CostSpec,
    ExponentialCost,
    LinearCost,
    LinkSpec,
    MM1Cost,
    PinnedFlow,
    PowerCost,
    PriceSpec,
    ProfileFile,
    ProfileSpec,
    Scenario,
    SegmentCost,
    SettingsOverride,
)
from src.scenario.profiles import (
    compile_profile,
    load_profile,
    profile_to_spec,
    save_profile,
)

__all__ = [
    "SCHEMA_VERSION",
    "AffineShiftedCost",
    "BreakpointCost",
    "ConstantCost",
    "CostSpec",
    "ExponentialCost",
    "LinearCost",
    "LinkSpec",
    "MM1Cost",
    "PinnedFlow",
    "PowerCost",
    "PriceSpec",
    "Problem",
    "ProfileFile",
    "ProfileSpec",
    "Scenario",
    "SegmentCost",
    "SettingsOverride",
    "build_marginal",
    "compile_profile",
    "compile_scenario",
    "dumps",
    "fit_linearly",
    "load",
    "load_problem",
    "loads",
    "profile_to_spec",
    "save",
    "save_profile",
    "to_spec",
]
