"""Attitude error vectors fed to the inner loop.

All four errors are body-frame vectors (the frame the moments act in) and
share the small-angle behaviour ``e ~ delta * axis`` for a body rotation by
``delta`` about ``axis`` away from the desired attitude.
"""

from __future__ import annotations

import enum

import numpy as np

from ..so3 import E3, axis_angle, cross, rot_z, tilt, yaw_angle


class MetricKind(enum.Enum):
    FULL = "full"
    HALF = "half"
    S2 = "s2"
    THRUST = "thrust"

    @classmethod
    def parse(cls, value) -> "MetricKind":
        if isinstance(value, cls):
            return value
        aliases = {
            "fullattitude": cls.FULL,
            "halfangle": cls.HALF,
            "s2tilt": cls.S2,
            "thrustvector": cls.THRUST,
            "e1": cls.FULL,
            "e2": cls.HALF,
            "e3": cls.S2,
            "e4": cls.THRUST,
        }
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        try:
            return cls(key)
        except ValueError:
            if key in aliases:
                return aliases[key]
            raise ValueError(f"unknown metric {value!r}") from None


def full_attitude_error(R_d, R) -> np.ndarray:
    """``0.5 * vee(R_d^T R - R^T R_d)``, i.e. ``sin(rho) n``."""
    E = R_d.T @ R
    return 0.5 * np.array([E[2, 1] - E[1, 2], E[0, 2] - E[2, 0], E[1, 0] - E[0, 1]])


def half_angle_error(R_d, R) -> np.ndarray:
    """``2 sin(rho / 2) n``; magnitude keeps growing up to ``rho = pi``."""
    rho, n = axis_angle(R_d.T @ R)
    return 2.0 * np.sin(0.5 * rho) * n


def s2_tilt_error(R_d, R) -> np.ndarray:
    """Tilt-only error from the yaw/tilt split of both attitudes.

    The tilt factors are built from the thrust axes alone, so any rotation
    about the body ``b3`` axis is invisible.  The axis of the tilt error is
    rotated into the body frame through the current heading and only its
    ``b1``/``b2`` part is kept: composing two minimal tilts leaves a small
    twist about ``b3`` that is not a thrust-direction error.  Past 90 deg of
    tilt error the vector saturates at unit length.
    """
    T = tilt(R[:, 2])
    T_d = tilt(R_d[:, 2])
    rho, n = axis_angle(T_d.T @ T)
    if rho == 0.0:
        return np.zeros(3)
    n_body = rot_z(yaw_angle(R)).T @ n
    n_body[2] = 0.0
    norm = np.linalg.norm(n_body)
    if norm == 0.0:
        return np.zeros(3)
    if rho <= 0.5 * np.pi:
        return np.sin(rho) * n_body
    return n_body / norm


def thrust_vector_error(R_d, R) -> np.ndarray:
    """Cross product of desired and actual thrust axes, in body coordinates."""
    n_d = R.T @ R_d[:, 2]
    return cross(n_d, E3)


_METRICS = {
    MetricKind.FULL: full_attitude_error,
    MetricKind.HALF: half_angle_error,
    MetricKind.S2: s2_tilt_error,
    MetricKind.THRUST: thrust_vector_error,
}


def attitude_error(R_d, R, kind) -> np.ndarray:
    R_d = np.asarray(R_d, dtype=float)
    R = np.asarray(R, dtype=float)
    return _METRICS[MetricKind.parse(kind)](R_d, R)
