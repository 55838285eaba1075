from src.network.topology import (
    Edge,
    Network,
    NodeId,
    offsprings,
    predecessors,
    reverse_topological_order,
    siblings,
)
from src.network.validation import (
    FailureKind,
    ValidationFailure,
    ValidationReport,
    validate,
)

__all__ = [
    "Edge",
    "FailureKind",
    "Network",
    "NodeId",
    "ValidationFailure",
    "ValidationReport",
    "offsprings",
    "predecessors",
    "reverse_topological_order",
    "siblings",
    "validate",
]
