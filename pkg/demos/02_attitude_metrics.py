"""The four attitude errors side by side.

Full and half-angle errors see yaw; the S2 and thrust-vector errors only see
where the thrust axis points.  Pass ``--plot`` to draw error magnitude
against tilt angle (needs matplotlib).
"""

import sys

import numpy as np

from ftquad import so3
from ftquad.controller import MetricKind, attitude_error

# pure yaw error of 30 deg
R = so3.rot_z(np.radians(30))
for kind in MetricKind:
    print(f"yaw 30 deg   {kind.value:7s}", np.round(attitude_error(np.eye(3), R, kind), 4))

# small tilt: all four agree
R = so3.rot_x(1e-3)
for kind in MetricKind:
    print(f"tilt 1 mrad  {kind.value:7s}", attitude_error(np.eye(3), R, kind))

# a spinning vehicle: tilt 20 deg about x while yawed by an arbitrary amount
for psi in (0.0, 1.0, 2.5):
    R = so3.rot_x(np.radians(20)) @ so3.rot_z(psi)
    R_d = so3.rot_z(0.0)
    row = {k.value: np.linalg.norm(attitude_error(R_d, R, k)) for k in MetricKind}
    print(f"yaw {psi:.1f} rad  " + "  ".join(f"{k}={v:.3f}" for k, v in row.items()))

# stop short of upside down, where the tilt split is undefined
angles = np.linspace(0, np.pi - 0.01, 300)
norms = {k: [np.linalg.norm(attitude_error(np.eye(3), so3.rot_y(a), k)) for a in angles] for k in MetricKind}

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    for k, v in norms.items():
        plt.plot(np.degrees(angles), v, label=k.value)
    plt.xlabel("tilt error (deg)")
    plt.ylabel("|e_R|")
    plt.legend()
    plt.show()
