"""Closed-loop scenario runner.

The plant steps at ``dt_plant``; the controller runs every
``control_divisor`` plant steps and its rotor speeds are held in between.
Rotor faults are applied to the held speeds at every plant step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..controller.allocation import allocate
from ..controller.geometric import FaultTolerantController
from ..dynamics import QuadState, apply_fault, mixer_matrix, rk4_vector
from ..errors import FtquadError, NumericalDivergence
from ..trajectory import evaluate
from .config import ScenarioConfig

TILT_LIMIT = 1e-3

COMPLETED = "completed"
DIVERGED = "diverged"
ERROR = "error"


@dataclass(frozen=True)
class RunStatus:
    kind: str = COMPLETED
    t: float | None = None
    detail: str = ""

    @property
    def completed(self) -> bool:
        return self.kind == COMPLETED

    def __str__(self) -> str:
        if self.completed:
            return "Completed"
        label = "Diverged" if self.kind == DIVERGED else "Error"
        return f"{label}(t={self.t:.3f}, {self.detail})"


@dataclass(eq=False)
class RunLog:
    """Control-rate time series.  ``R`` is stored row-major as ``(n, 9)``."""

    t: np.ndarray
    p: np.ndarray
    v: np.ndarray
    R: np.ndarray
    Omega: np.ndarray
    p_d: np.ndarray
    v_d: np.ndarray
    f: np.ndarray
    M: np.ndarray
    w: np.ndarray
    e_R: np.ndarray
    e_Omega: np.ndarray
    status: RunStatus = RunStatus()
    t_fault: float | None = None

    def __len__(self) -> int:
        return len(self.t)

    @property
    def position_error(self) -> np.ndarray:
        return self.p - self.p_d

    @property
    def tilt(self) -> np.ndarray:
        """Angle between body and inertial third axes (rad)."""
        return np.arccos(np.clip(self.R[:, 8], -1.0, 1.0))

    def state(self, i: int) -> QuadState:
        return QuadState(self.p[i].copy(), self.v[i].copy(), self.R[i].reshape(3, 3).copy(), self.Omega[i].copy())

    @classmethod
    def empty(cls, n: int) -> "RunLog":
        z3 = lambda: np.zeros((n, 3))  # noqa: E731
        return cls(np.zeros(n), z3(), z3(), np.zeros((n, 9)), z3(), z3(), z3(), np.zeros(n), z3(), np.zeros((n, 4)), z3(), z3())

    def truncated(self, n: int) -> "RunLog":
        arrays = {k: getattr(self, k)[:n] for k in _SERIES}
        return RunLog(**arrays, status=self.status, t_fault=self.t_fault)


_SERIES = ("t", "p", "v", "R", "Omega", "p_d", "v_d", "f", "M", "w", "e_R", "e_Omega")


def run_scenario(cfg: ScenarioConfig) -> RunLog:
    """Simulate ``cfg`` and return the control-rate log.

    Divergence never raises; it ends the run and is recorded in ``status``.
    The run is diverged when the body is within ``TILT_LIMIT`` of upside
    down, the commanded moment exceeds ``cfg.max_moment``, the position error
    exceeds ``cfg.max_position_error`` or the state leaves the finite range.
    """
    cfg.validate()
    params, fault = cfg.params, cfg.fault
    dt, div = cfg.dt_plant, int(cfg.control_divisor)
    n_steps = int(round(cfg.total_time / dt))
    n_ticks = (n_steps + div - 1) // div
    spec = cfg.spec
    ctrl = FaultTolerantController(cfg.gains, params, cfg.metric, dt * div)
    mixer = mixer_matrix(params)

    log = RunLog.empty(n_ticks)
    log.t_fault = fault.t_fault if fault.failed else None
    x = cfg.start_state().to_vector()
    w = np.full(4, params.hover_speed)
    status = RunStatus()
    tick = 0

    for k in range(n_steps):
        t = k * dt
        if k % div == 0:
            s = QuadState.from_vector(x)
            sp = evaluate(spec, t - cfg.trajectory_start)
            active = fault.active(t)
            try:
                cmd, _, e_R, e_W = ctrl.update(s, sp, active)
            except FtquadError as exc:
                status = RunStatus(ERROR, t, type(exc).__name__)
                break
            w = allocate(cmd, fault, active, params)
            i = tick
            log.t[i] = t
            log.p[i], log.v[i], log.R[i], log.Omega[i] = s.p, s.v, x[6:15], s.Omega
            log.p_d[i], log.v_d[i] = sp.p_d, sp.v_d
            log.f[i], log.M[i] = cmd.f, cmd.M
            log.w[i] = apply_fault(w, fault, t)
            log.e_R[i], log.e_Omega[i] = e_R, e_W
            tick += 1

            reason = _diverged(s, sp, cmd, cfg)
            if reason:
                status = RunStatus(DIVERGED, t, reason)
                break
        u = mixer @ np.square(apply_fault(w, fault, t))
        try:
            x = rk4_vector(x, u[0], u[1:], params, dt)
        except NumericalDivergence:
            status = RunStatus(DIVERGED, t + dt, "state overflow")
            break
        except FtquadError as exc:
            status = RunStatus(ERROR, t + dt, type(exc).__name__)
            break

    log.status = status
    return log.truncated(tick)


def _diverged(s: QuadState, sp, cmd, cfg: ScenarioConfig) -> str:
    if s.R[2, 2] < -1.0 + TILT_LIMIT:
        return "inverted"
    if np.linalg.norm(cmd.M) > cfg.max_moment:
        return "moment spike"
    if np.linalg.norm(s.p - sp.p_d) > cfg.max_position_error:
        return "lost track"
    return ""
