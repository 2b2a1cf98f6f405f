from .allocation import allocate, allocation_matrix, condition_numbers, retained_components
from .geometric import (
    FaultTolerantController,
    Gains,
    OuterOutput,
    Setpoint,
    desired_axes,
    inner_loop,
    outer_loop,
)
from .metrics import MetricKind, attitude_error

__all__ = [
    "FaultTolerantController",
    "Gains",
    "MetricKind",
    "OuterOutput",
    "Setpoint",
    "allocate",
    "allocation_matrix",
    "attitude_error",
    "condition_numbers",
    "desired_axes",
    "inner_loop",
    "outer_loop",
    "retained_components",
]
