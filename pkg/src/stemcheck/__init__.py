"""Full-compliance verification of acyclic structured process models.

The package pairs a polynomial stem-evaluation engine over the process tree
with an exhaustive enumerate-and-check oracle; the two are kept in agreement
by a differential test suite.
"""

from .constraints import DeltaFamily, FailureDeltaConstraint, translate_obligation
from .engine import EngineReport, check_full_compliance, stem_evaluation
from .model import (
    ExecutionBudgetExceeded,
    Literal,
    ProcessModel,
    Task,
    ValidationError,
    and_,
    compute_trace,
    enumerate_executions,
    make_model,
    seq,
    state_update,
    task,
    validate_model,
    xor,
)
from .obligations import (
    AssumptionConflict,
    ConditionalObligation,
    ObligationKind,
    specialize_for_obligation,
)
from .oracle import ComplianceLevel, classify_process_compliance, trace_complies, trace_matches_delta

__all__ = [
    "AssumptionConflict",
    "ComplianceLevel",
    "ConditionalObligation",
    "DeltaFamily",
    "EngineReport",
    "ExecutionBudgetExceeded",
    "FailureDeltaConstraint",
    "Literal",
    "ObligationKind",
    "ProcessModel",
    "Task",
    "ValidationError",
    "and_",
    "check_full_compliance",
    "classify_process_compliance",
    "compute_trace",
    "enumerate_executions",
    "make_model",
    "seq",
    "specialize_for_obligation",
    "state_update",
    "stem_evaluation",
    "task",
    "trace_complies",
    "trace_matches_delta",
    "translate_obligation",
    "validate_model",
    "xor",
]
