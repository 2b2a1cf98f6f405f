"""Rigid-body quadrotor plant with linear drag and rotor faults.

Frame convention: ``e3`` points along gravity and the rotors push along
``-R e3``, so hover is ``R = I`` with collective thrust ``f = m g``.

Rotor numbering follows :func:`mixer_matrix`: rotors 1 and 2 sit on the
body ``b1`` axis (2 on ``+b1``) and spin clockwise, rotors 3 and 4 sit on the
``b2`` axis (4 on ``+b2``) and spin counter-clockwise.  Public functions take
1-based rotor labels; arrays are indexed 0..3.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, NumericalDivergence
from .so3 import cross, reorthonormalize

DIVERGENCE_LIMIT = 1e6


@dataclass(frozen=True, eq=False)
class QuadParams:
    m: float = 0.25
    J: np.ndarray = field(default_factory=lambda: np.diag([2.1e-4, 2.1e-4, 3.6e-4]))
    d: float = 0.0763
    k_f: float = 2.4e-7
    k_m: float = 7.8e-9
    k_td: float = 0.05
    k_rd: np.ndarray = field(default_factory=lambda: np.array([1e-4, 1e-4, 6.6e-3]))
    g: float = 9.81
    omega_max: float = 3000.0

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        if J.shape == (3,):
            J = np.diag(J)
        k_rd = np.broadcast_to(np.asarray(self.k_rd, dtype=float), (3,)).copy()
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "k_rd", k_rd)
        self.validate()
        object.__setattr__(self, "_J_inv", np.linalg.inv(J))

    def validate(self):
        for name in ("m", "d", "k_f", "k_m", "omega_max", "g"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"params.{name} must be positive")
        if self.J.shape != (3, 3) or not np.allclose(self.J, self.J.T):
            raise ConfigError("params.J must be a symmetric 3x3 matrix")
        if np.min(np.linalg.eigvalsh(self.J)) <= 0:
            raise ConfigError("params.J must be positive definite")
        if self.k_td < 0 or np.any(self.k_rd < 0):
            raise ConfigError("drag coefficients must be non-negative")

    @property
    def J_inv(self) -> np.ndarray:
        return self._J_inv.copy()

    @property
    def f_max(self) -> float:
        return 4.0 * self.k_f * self.omega_max**2

    @property
    def hover_speed(self) -> float:
        return float(np.sqrt(self.m * self.g / (4.0 * self.k_f)))

    def replace(self, **changes) -> "QuadParams":
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class QuadState:
    p: np.ndarray
    v: np.ndarray
    R: np.ndarray
    Omega: np.ndarray

    @classmethod
    def hover(cls, p=(0.0, 0.0, 0.0)) -> "QuadState":
        return cls(np.array(p, dtype=float), np.zeros(3), np.eye(3), np.zeros(3))

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.p, self.v, self.R.ravel(), self.Omega])

    @classmethod
    def from_vector(cls, x) -> "QuadState":
        x = np.asarray(x, dtype=float)
        return cls(x[0:3].copy(), x[3:6].copy(), x[6:15].reshape(3, 3).copy(), x[15:18].copy())


@dataclass(frozen=True)
class QuadStateDerivative:
    p_dot: np.ndarray
    v_dot: np.ndarray
    R_dot: np.ndarray
    Omega_dot: np.ndarray


@dataclass(frozen=True, eq=False)
class ControlCommand:
    f: float
    M: np.ndarray

    def as_vector(self) -> np.ndarray:
        return np.array([self.f, *self.M])


@dataclass(frozen=True)
class FaultConfig:
    """Rotors (1-based) that stop at ``t_fault``."""

    failed: frozenset = frozenset()
    t_fault: float = 1.0

    def __post_init__(self):
        failed = frozenset(int(i) for i in self.failed)
        object.__setattr__(self, "failed", failed)
        if not failed <= {1, 2, 3, 4}:
            raise ConfigError(f"rotor indices must be in 1..4, got {sorted(failed)}")
        if len(failed) > 2:
            raise ConfigError("at most two rotors may fail")
        if len(failed) == 2 and failed not in ({1, 2}, {3, 4}):
            raise ConfigError("dual failures must be an opposing pair {1,2} or {3,4}")
        if self.t_fault < 0:
            raise ConfigError("fault time must be non-negative")

    @classmethod
    def none(cls) -> "FaultConfig":
        return cls(frozenset(), 0.0)

    def active(self, t: float) -> bool:
        return bool(self.failed) and t >= self.t_fault

    @property
    def label(self) -> str:
        if not self.failed:
            return "none"
        kind = "single" if len(self.failed) == 1 else "dual"
        return f"{kind}:" + ",".join(str(i) for i in sorted(self.failed))


def mixer_matrix(params: QuadParams) -> np.ndarray:
    """Map from squared rotor speeds to ``[f, M1, M2, M3]``."""
    kf, km, dkf = params.k_f, params.k_m, params.d * params.k_f
    return np.array(
        [
            [kf, kf, kf, kf],
            [0.0, 0.0, dkf, -dkf],
            [-dkf, dkf, 0.0, 0.0],
            [km, km, -km, -km],
        ]
    )


def motor_forward(w, params: QuadParams) -> ControlCommand:
    u = mixer_matrix(params) @ np.square(np.asarray(w, dtype=float))
    return ControlCommand(float(u[0]), u[1:].copy())


def apply_fault(w, fault: FaultConfig, t: float) -> np.ndarray:
    w = np.array(w, dtype=float)
    if fault.active(t):
        for i in fault.failed:
            w[i - 1] = 0.0
    return w


def _derivative(x, f, M, params: QuadParams):
    out = np.empty(18)
    R = x[6:15].reshape(3, 3)
    p, q, r = x[15:18]
    out[0:3] = x[3:6]
    out[3:6] = -(f / params.m) * R[:, 2] - (params.k_td / params.m) * x[3:6]
    out[5] += params.g
    # R @ hat(Omega), row by row
    out[6:15] = (R @ np.array([[0.0, -r, q], [r, 0.0, -p], [-q, p, 0.0]])).ravel()
    Om = x[15:18]
    out[15:18] = params._J_inv @ (M - cross(Om, params.J @ Om) - params.k_rd * Om)
    return out


def state_derivative(s: QuadState, cmd: ControlCommand, params: QuadParams) -> QuadStateDerivative:
    """Equations of motion; drag opposes both linear and angular velocity."""
    dx = _derivative(s.to_vector(), float(cmd.f), np.asarray(cmd.M, dtype=float), params)
    return QuadStateDerivative(dx[0:3], dx[3:6], dx[6:15].reshape(3, 3), dx[15:18])


def rk4_vector(x, f, M, params: QuadParams, dt: float) -> np.ndarray:
    """One RK4 step of the flat 18-state with the wrench held constant."""
    k1 = _derivative(x, f, M, params)
    k2 = _derivative(x + 0.5 * dt * k1, f, M, params)
    k3 = _derivative(x + 0.5 * dt * k2, f, M, params)
    k4 = _derivative(x + dt * k3, f, M, params)
    x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.abs(x) < DIVERGENCE_LIMIT):
        raise NumericalDivergence("state left the finite range during integration")
    x[6:15] = reorthonormalize(x[6:15].reshape(3, 3)).ravel()
    return x


def step(s: QuadState, w, params: QuadParams, dt: float) -> QuadState:
    """Advance the plant by ``dt`` with rotor speeds ``w`` held constant."""
    if not 0.0 < dt <= 0.01:
        raise ValueError(f"dt must be in (0, 0.01], got {dt}")
    cmd = motor_forward(w, params)
    x = rk4_vector(s.to_vector(), cmd.f, cmd.M, params, dt)
    return QuadState.from_vector(x)
