from src.schemas.reports import (
    BoundCheckReport,
    ConstructionReport,
    EquilibriumCost,
    EquilibriumReport,
    OptimumReport,
    PriceOfAnarchyReport,
    PriceSummary,
    RelayDiagnostic,
    SuiteReport,
    SweepRow,
)

__all__ = [
    "BoundCheckReport",
    "ConstructionReport",
    "EquilibriumCost",
    "EquilibriumReport",
    "OptimumReport",
    "PriceOfAnarchyReport",
    "PriceSummary",
    "RelayDiagnostic",
    "SuiteReport",
    "SweepRow",
]
