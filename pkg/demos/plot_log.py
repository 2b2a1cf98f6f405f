"""Plot a CSV log: position against reference per axis, plus body yaw rate.

usage: python plot_log.py run.csv [more.csv ...]
"""

import sys

import matplotlib.pyplot as plt
import numpy as np

paths = sys.argv[1:]
if not paths:
    sys.exit(__doc__)

fig, axes = plt.subplots(4, len(paths), sharex=True, squeeze=False, figsize=(4 * len(paths), 8))
for col, path in enumerate(paths):
    data = np.genfromtxt(path, delimiter=",", names=True)
    t = data["t"]
    for row, (a, ad) in enumerate((("x", "xd"), ("y", "yd"), ("z", "zd"))):
        ax = axes[row, col]
        ax.plot(t, data[ad], color="0.6", label="desired")
        ax.plot(t, data[a], "b--", label="actual")
        err = ax.twinx()
        err.plot(t, data[a] - data[ad], "r", lw=0.8)
        ax.set_ylabel(f"{a} (m)")
    axes[3, col].plot(t, data["wz"])
    axes[3, col].set_ylabel("yaw rate (rad/s)")
    axes[3, col].set_xlabel("t (s)")
    axes[0, col].set_title(path)
axes[0, 0].legend()
fig.tight_layout()
plt.show()
