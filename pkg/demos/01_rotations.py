"""Rotation helpers: hat/vee, Rodrigues, axis-angle and the yaw/tilt split."""

import numpy as np

from ftquad import so3

rng = np.random.default_rng(0)

# hat turns a vector into the matrix of its cross product
a, b = rng.normal(size=3), rng.normal(size=3)
print("hat(a) @ b == a x b:", np.allclose(so3.hat(a) @ b, np.cross(a, b)))
print("vee(hat(a)) == a:", np.array_equal(so3.vee(so3.hat(a)), a))

# Rodrigues and axis-angle are inverses away from 0 and pi
axis = np.array([1.0, 2.0, -0.5])
axis /= np.linalg.norm(axis)
R = so3.rodrigues(1.2, axis)
angle, n = so3.axis_angle(R)
print(f"angle back: {angle:.12f}, axis error: {np.abs(n - axis).max():.2e}")

# Any attitude that is not upside down splits into a heading and a tilt
R = so3.random_rotation(rng)
if R[2, 2] < 0:
    R = so3.rot_x(np.pi) @ R
R_yaw, R_tilt = so3.yaw_tilt_decompose(R)
print(f"heading {np.degrees(so3.yaw_angle(R)):.1f} deg")
print("R_yaw @ R_tilt == R:", np.allclose(R_yaw @ R_tilt, R))
print("tilt(b3) keeps the thrust axis:", np.allclose(so3.tilt(R[:, 2])[:, 2], R[:, 2]))

# integrator drift is removed by projecting back onto the rotation group
drifted = R + 1e-5 * rng.normal(size=(3, 3))
print("reorthonormalised is a rotation:", so3.is_rotation(so3.reorthonormalize(drifted)))
