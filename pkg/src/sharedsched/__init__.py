"""Exact toolkit for shared-processor overlap scheduling.

Divisible jobs run from time zero on their own private processor and may
simultaneously use one of m shared processors; overlapping execution
shortens completion, and the objective is the total weighted overlap.
The package evaluates, validates, canonicalizes and optimizes such
schedules in exact dyadic-rational arithmetic: no floats anywhere.
"""

from .dyadic import Dyadic, as_dyadic
from .engine import (
    EvalReport,
    InfeasibleScheduleError,
    SyncSchedule,
    check_feasible,
    evaluate,
    evaluate_matrix,
    evaluate_sequence,
    exchange_delta,
    is_processing_time_inclusive,
    is_v_shaped,
    is_weight_inclusive,
    parse_sync_schedule,
    reverse_dual,
    serialize_sync_schedule,
    start_times,
    suffix_weight,
)
from .model import Instance, InstanceError, Job, parse_instance, serialize_instance
from .solvers import (
    SearchLimits,
    brute_force,
    improve_by_exchanges,
    search_backend,
    solve_equal_weights,
)
from .transforms import (
    GeneralSchedule,
    JobPlacement,
    parse_general_schedule,
    serialize_general_schedule,
    synchronize,
    synchronize_detailed,
    value_general,
)

__version__ = "0.1.0"

__all__ = [
    "Dyadic",
    "as_dyadic",
    "Job",
    "Instance",
    "InstanceError",
    "parse_instance",
    "serialize_instance",
    "SyncSchedule",
    "EvalReport",
    "InfeasibleScheduleError",
    "start_times",
    "check_feasible",
    "evaluate",
    "evaluate_sequence",
    "evaluate_matrix",
    "suffix_weight",
    "exchange_delta",
    "is_processing_time_inclusive",
    "is_weight_inclusive",
    "is_v_shaped",
    "reverse_dual",
    "parse_sync_schedule",
    "serialize_sync_schedule",
    "GeneralSchedule",
    "JobPlacement",
    "value_general",
    "synchronize",
    "synchronize_detailed",
    "parse_general_schedule",
    "serialize_general_schedule",
    "SearchLimits",
    "brute_force",
    "solve_equal_weights",
    "improve_by_exchanges",
    "search_backend",
    "__version__",
]
