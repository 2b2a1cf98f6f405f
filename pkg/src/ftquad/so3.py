"""Rotation-group helpers on SO(3).

Conventions
-----------
Vectors are length-3 numpy arrays.  Rotation matrices map body coordinates to
inertial coordinates, so the body axes are the *columns* of ``R``.  The
inertial third axis ``e3`` is the gravity direction of the plant model.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import Degenerate, NotSkew, TiltSingularity

SKEW_TOLERANCE = 1e-6
ANGLE_EPSILON = 1e-7
PI_EPSILON = 1e-6
TILT_SINGULARITY_EPSILON = 1e-6

E3 = np.array([0.0, 0.0, 1.0])
_I3 = np.eye(3)


class AxisAngle(NamedTuple):
    angle: float
    axis: np.ndarray


def hat(v) -> np.ndarray:
    """Skew-symmetric matrix such that ``hat(a) @ b == np.cross(a, b)``."""
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def cross(a, b) -> np.ndarray:
    """Cross product of two 3-vectors (much cheaper than ``np.cross`` here)."""
    return np.array(
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    )


def vee(A, tol: float = SKEW_TOLERANCE) -> np.ndarray:
    """Inverse of :func:`hat`.

    Raises NotSkew when ``A + A.T`` is larger than ``tol`` (max-abs entry).
    """
    A = np.asarray(A, dtype=float)
    asym = np.max(np.abs(A + A.T))
    if not asym <= tol:
        raise NotSkew(f"matrix is not skew-symmetric (|A + A^T| = {asym:.3g})")
    return np.array([A[2, 1], A[0, 2], A[1, 0]])


def skew_part(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    return 0.5 * (A - A.T)


def rot_x(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle: float) -> np.ndarray:
    """Yaw rotation about ``e3``."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rodrigues(angle: float, axis) -> np.ndarray:
    """Rotation by ``angle`` about the unit vector ``axis``."""
    K = hat(axis)
    return np.eye(3) + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)


def axis_angle(R) -> AxisAngle:
    """Angle in [0, pi] and unit axis of a rotation matrix.

    For angles below ``ANGLE_EPSILON`` the axis is reported as ``e3``.  Close
    to pi the axis is read off the symmetric part, since the skew part
    vanishes there; its sign is chosen to agree with whatever skew part is
    left.
    """
    R = np.asarray(R, dtype=float)
    w = np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    c = np.clip(0.5 * (np.trace(R) - 1.0), -1.0, 1.0)
    s = 0.5 * np.linalg.norm(w)
    # atan2 is the same angle as acos(c) but keeps precision near 0 and pi
    angle = float(np.arctan2(s, c))
    if angle < ANGLE_EPSILON:
        return AxisAngle(0.0, E3.copy())
    if np.pi - angle < PI_EPSILON:
        B = 0.5 * (R + R.T)
        nnT = (B - c * np.eye(3)) / (1.0 - c)
        k = int(np.argmax(np.diag(nnT)))
        n = nnT[:, k] / np.sqrt(nnT[k, k])
        n /= np.linalg.norm(n)
        if np.dot(n, w) < 0.0:
            n = -n
        return AxisAngle(angle, n)
    return AxisAngle(angle, w / (2.0 * s))


def tilt(b3) -> np.ndarray:
    """Minimal rotation taking ``e3`` onto the unit vector ``b3``.

    The (2, 2) entry uses ``1 - b3y**2 / (1 + b3z)``; without the square the
    matrix is not orthogonal.
    """
    bx, by, bz = b3
    if bz <= -1.0 + TILT_SINGULARITY_EPSILON:
        raise TiltSingularity(f"b3z = {bz:.9f} too close to -1")
    k = 1.0 / (1.0 + bz)
    return np.array(
        [
            [bz + by * by * k, -bx * by * k, bx],
            [-bx * by * k, 1.0 - by * by * k, by],
            [-bx, -by, bz],
        ]
    )


def yaw_angle(R) -> float:
    """Heading angle psi of ``R`` as used by :func:`yaw_tilt_decompose`."""
    R = np.asarray(R, dtype=float)
    Rz = tilt(R[:, 2]).T @ R
    return float(np.arctan2(Rz[1, 0], Rz[0, 0]))


def yaw_tilt_decompose(R) -> tuple[np.ndarray, np.ndarray]:
    """Split ``R`` into ``(R_yaw, R_tilt)`` with ``R = R_yaw @ R_tilt``.

    ``R_yaw`` is a pure rotation about ``e3`` and ``R_tilt`` is the minimal
    (twist-free) rotation taking ``e3`` to its own third column.  The yaw
    angle equals the one in the body-ordered split ``R = tilt(b3) @ R_yaw``
    (the two orderings share ``R_yaw``), so ``tilt(R[:, 2]) == R @ R_yaw.T``.
    """
    R = np.asarray(R, dtype=float)
    R_yaw = rot_z(yaw_angle(R))
    return R_yaw, R_yaw.T @ R


def reorthonormalize(R) -> np.ndarray:
    """Closest rotation matrix to ``R`` in the Frobenius sense (polar factor).

    Nearly orthogonal inputs (integrator drift) take two Newton-Schulz
    iterations, which converge quadratically to the same polar factor; anything
    else goes through an SVD.
    """
    R = np.asarray(R, dtype=float)
    if not np.all(np.isfinite(R)):
        raise Degenerate("non-finite matrix")
    E = R.T @ R - _I3
    if np.abs(E).max() < 1e-6:
        Q = R @ (_I3 - 0.5 * E)
        return Q @ (1.5 * _I3 - 0.5 * (Q.T @ Q))
    U, S, Vt = np.linalg.svd(R)
    if S[-1] <= 1e-12 * max(S[0], 1e-300):
        raise Degenerate(f"rank-deficient matrix (singular values {S})")
    Q = U @ Vt
    if np.linalg.det(Q) < 0.0:
        U[:, -1] = -U[:, -1]
        Q = U @ Vt
    return Q


def is_rotation(R, tol: float = 1e-9) -> bool:
    R = np.asarray(R, dtype=float)
    return bool(
        R.shape == (3, 3)
        and np.linalg.norm(R @ R.T - np.eye(3)) <= tol
        and abs(np.linalg.det(R) - 1.0) <= tol
    )


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniformly distributed rotation (via a random unit quaternion)."""
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )
