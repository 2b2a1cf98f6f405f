"""Fault-tolerant geometric control of a quadrotor after rotor failures."""

from . import so3
from .controller import FaultTolerantController, Gains, MetricKind, Setpoint, allocate, attitude_error
from .dynamics import ControlCommand, FaultConfig, QuadParams, QuadState, apply_fault, motor_forward, step
from .errors import FtquadError
from .harness import RunLog, ScenarioConfig, export_csv, rmse, run_scenario, sweep
from .trajectory import HoverSpec, OvalSpec, evaluate, named

__version__ = "0.1.0"

__all__ = [
    "ControlCommand",
    "FaultConfig",
    "FaultTolerantController",
    "FtquadError",
    "Gains",
    "HoverSpec",
    "MetricKind",
    "OvalSpec",
    "QuadParams",
    "QuadState",
    "RunLog",
    "ScenarioConfig",
    "Setpoint",
    "allocate",
    "apply_fault",
    "attitude_error",
    "evaluate",
    "export_csv",
    "motor_forward",
    "named",
    "rmse",
    "run_scenario",
    "so3",
    "step",
    "sweep",
]
