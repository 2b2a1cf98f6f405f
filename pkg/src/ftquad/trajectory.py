"""Reference trajectories: ramped ovals and hover.

The oval is parameterised by a phase ``theta``::

    p_d = center + [a_x sin(theta), a_y (1 - cos(theta)), a_z / 2 (1 - cos(2 theta))]

so it starts and ends at ``center`` with zero velocity.  The phase rate is
ramped up and down with a cubic smoothstep over ``ramp_time`` at each end,
which keeps ``theta`` twice continuously differentiable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .controller.geometric import Setpoint
from .errors import ConfigError


@dataclass(frozen=True, eq=False)
class OvalSpec:
    amplitude: np.ndarray = field(default_factory=lambda: np.array([2.0, 1.5, 0.5]))
    duration: float = 15.0
    ramp_time: float | None = None
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    laps: int = 1

    def __post_init__(self):
        amp = np.broadcast_to(np.asarray(self.amplitude, dtype=float), (3,)).copy()
        center = np.broadcast_to(np.asarray(self.center, dtype=float), (3,)).copy()
        ramp = self.duration / 15.0 if self.ramp_time is None else float(self.ramp_time)
        object.__setattr__(self, "amplitude", amp)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "ramp_time", ramp)
        if not self.duration > 0:
            raise ConfigError("trajectory duration must be positive")
        if np.any(amp < 0):
            raise ConfigError("trajectory amplitudes must be non-negative")
        if not 0.0 <= ramp < self.duration:
            raise ConfigError("ramp_time must lie in [0, duration)")
        if int(self.laps) != self.laps or self.laps < 1:
            raise ConfigError("laps must be a positive integer")

    @property
    def cruise_rate(self) -> float:
        """Phase rate between the ramps (rad/s)."""
        return 2.0 * np.pi * self.laps / (self.duration - self.ramp_time)


@dataclass(frozen=True, eq=False)
class HoverSpec:
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))
    duration: float = 0.0


NAMED_DURATIONS = {"oval15": 15.0, "oval12": 12.0, "oval8": 8.0, "oval5": 5.0}


def named(name: str, center=(0.0, 0.0, 0.0)):
    key = name.strip().lower()
    if key == "hover":
        return HoverSpec(np.array(center, dtype=float))
    if key not in NAMED_DURATIONS:
        raise ConfigError(f"unknown trajectory {name!r}; expected one of {sorted(NAMED_DURATIONS)} or 'hover'")
    return OvalSpec(duration=NAMED_DURATIONS[key], center=np.array(center, dtype=float))


def _phase(spec: OvalSpec, t: float) -> tuple[float, float, float]:
    """``theta, theta_dot, theta_ddot`` at time ``t``."""
    D, T, w = spec.duration, spec.ramp_time, spec.cruise_rate
    total = 2.0 * np.pi * spec.laps
    if t <= 0.0:
        return 0.0, 0.0, 0.0
    if t >= D:
        return total, 0.0, 0.0
    if T > 0.0 and t < T:
        u = t / T
        return w * T * (u**3 - 0.5 * u**4), w * (3 * u**2 - 2 * u**3), w * (6 * u - 6 * u**2) / T
    if T > 0.0 and t > D - T:
        u = (D - t) / T
        return total - w * T * (u**3 - 0.5 * u**4), w * (3 * u**2 - 2 * u**3), -w * (6 * u - 6 * u**2) / T
    return w * (t - 0.5 * T), w, 0.0


def evaluate(spec, t: float) -> Setpoint:
    """Setpoint at time ``t`` (seconds since the trajectory start).

    Before the start and after the end the endpoint is held with zero
    derivatives.  Desired yaw and yaw rate are always zero.
    """
    if isinstance(spec, HoverSpec):
        return Setpoint.hold(spec.center)
    th, thd, thdd = _phase(spec, t)
    ax, ay, az = spec.amplitude
    s1, c1 = np.sin(th), np.cos(th)
    s2, c2 = np.sin(2 * th), np.cos(2 * th)
    p = spec.center + np.array([ax * s1, ay * (1 - c1), 0.5 * az * (1 - c2)])
    dp = np.array([ax * c1, ay * s1, az * s2])
    ddp = np.array([-ax * s1, ay * c1, 2 * az * c2])
    v = dp * thd
    a = ddp * thd**2 + dp * thdd
    return Setpoint(p, v, a, 0.0, 0.0)


def max_speed(spec, step: float = 1e-3) -> float:
    """Peak reference speed over the trajectory, sampled on a ``step`` grid."""
    if isinstance(spec, HoverSpec):
        return 0.0
    ts = np.arange(0.0, spec.duration + 0.5 * step, step)
    return float(max(np.linalg.norm(evaluate(spec, t).v_d) for t in ts))
