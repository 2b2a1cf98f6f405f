"""Two-loop geometric tracking controller with yaw surrender after a fault."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..dynamics import ControlCommand, QuadParams, QuadState
from ..errors import ConfigError, DegenerateThrust, HeadingSingularity
from ..so3 import E3, cross, reorthonormalize, skew_part
from .metrics import MetricKind, attitude_error

THRUST_EPSILON = 1e-6
HEADING_EPSILON = 1e-6


def _vec3(x) -> np.ndarray:
    return np.broadcast_to(np.asarray(x, dtype=float), (3,)).copy()


@dataclass(frozen=True, eq=False)
class Gains:
    k_p: np.ndarray = field(default_factory=lambda: np.array([6.0, 6.0, 8.0]))
    k_v: np.ndarray = field(default_factory=lambda: np.array([4.0, 4.0, 5.0]))
    k_R: np.ndarray = field(default_factory=lambda: np.array([0.08, 0.08, 0.05]))
    k_Omega: np.ndarray = field(default_factory=lambda: np.array([0.006, 0.006, 0.01]))

    def __post_init__(self):
        for name in ("k_p", "k_v", "k_R", "k_Omega"):
            v = _vec3(getattr(self, name))
            if not np.all(v > 0):
                raise ConfigError(f"gains.{name} must be strictly positive")
            object.__setattr__(self, name, v)


@dataclass(frozen=True, eq=False)
class Setpoint:
    p_d: np.ndarray
    v_d: np.ndarray
    a_d: np.ndarray
    psi_d: float = 0.0
    psi_dot_d: float = 0.0

    @classmethod
    def hold(cls, p) -> "Setpoint":
        return cls(np.array(p, dtype=float), np.zeros(3), np.zeros(3))


@dataclass(frozen=True, eq=False)
class OuterOutput:
    f: float
    R_d: np.ndarray
    Omega_d: np.ndarray


def desired_axes(b3_d, b_hd) -> np.ndarray:
    """Desired attitude whose third column is ``b3_d`` and heading ``b_hd``."""
    c = cross(b_hd, b3_d)
    nc = np.linalg.norm(c)
    if nc <= HEADING_EPSILON:
        raise HeadingSingularity("desired heading is parallel to the thrust axis")
    b1 = c / nc
    b2 = cross(b3_d, b1)
    b2 /= np.linalg.norm(b2)
    return reorthonormalize(np.column_stack([b1, b2, b3_d]))


def outer_loop(
    s: QuadState,
    sp: Setpoint,
    gains: Gains,
    params: QuadParams,
    fault_active: bool = False,
    prev=None,
    dt: float = 0.002,
) -> OuterOutput:
    """Thrust, desired attitude and desired body rates.

    ``prev`` is the desired attitude from the previous control tick (or None
    on the first tick, which yields zero desired rates).
    """
    e_p = s.p - sp.p_d
    e_v = s.v - sp.v_d
    # e3 points down and thrust acts along -R e3: this is the stabilising sign
    A = gains.k_p * e_p + gains.k_v * e_v + params.g * E3 - sp.a_d
    nA = np.linalg.norm(A)
    if not nA > THRUST_EPSILON:
        raise DegenerateThrust(f"commanded acceleration norm {nA:.3g} too small")
    f = float(np.clip(params.m * np.dot(A, s.R[:, 2]), 0.0, params.f_max))
    b3_d = A / nA

    psi_d = 0.0 if fault_active else sp.psi_d
    b_hd = np.array([-np.sin(psi_d), np.cos(psi_d), 0.0])
    R_d = desired_axes(b3_d, b_hd)

    if prev is None:
        Omega_d = np.zeros(3)
    else:
        W = skew_part(R_d.T @ (R_d - prev)) / dt
        Omega_d = np.array([W[2, 1], W[0, 2], W[1, 0]])
    if fault_active:
        Omega_d[2] = 0.0
    return OuterOutput(f, R_d, Omega_d)


def inner_loop(s: QuadState, out: OuterOutput, gains: Gains, params: QuadParams, kind) -> tuple[ControlCommand, np.ndarray, np.ndarray]:
    """Body moments; returns ``(command, e_R, e_Omega)``."""
    e_R = attitude_error(out.R_d, s.R, kind)
    e_W = s.Omega - s.R.T @ (out.R_d @ out.Omega_d)
    M = -gains.k_R * e_R - gains.k_Omega * e_W + cross(s.Omega, params.J @ s.Omega)
    return ControlCommand(out.f, M), e_R, e_W


class FaultTolerantController:
    """Stateful wrapper holding the previous desired attitude."""

    def __init__(self, gains: Gains, params: QuadParams, metric=MetricKind.FULL, dt: float = 0.002):
        self.gains = gains
        self.params = params
        self.metric = MetricKind.parse(metric)
        self.dt = dt
        self.prev_R_d = None

    def reset(self):
        self.prev_R_d = None

    def update(self, s: QuadState, sp: Setpoint, fault_active: bool = False):
        """One control tick; returns ``(command, outer_output, e_R, e_Omega)``."""
        out = outer_loop(s, sp, self.gains, self.params, fault_active, self.prev_R_d, self.dt)
        self.prev_R_d = out.R_d
        cmd, e_R, e_W = inner_loop(s, out, self.gains, self.params, self.metric)
        return cmd, out, e_R, e_W
