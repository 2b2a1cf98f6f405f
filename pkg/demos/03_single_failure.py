"""One rotor stops while hovering, then the vehicle flies an oval.

Runs all four attitude metrics on the 15 s oval, prints tracking RMSE and the
spin rate, and writes one CSV log per metric for ``plot_log.py``.
"""

import sys
from pathlib import Path

from ftquad.dynamics import FaultConfig
from ftquad.harness import ScenarioConfig, export_csv, run_scenario, scenario_rmse

trajectory = sys.argv[1] if len(sys.argv) > 1 else "oval15"
out = Path("demo_logs")
out.mkdir(exist_ok=True)

for metric in ("full", "half", "s2", "thrust"):
    cfg = ScenarioConfig(metric=metric, trajectory=trajectory, fault=FaultConfig(frozenset({1}), 1.0))
    log = run_scenario(cfg)
    export_csv(log, out / f"single_{metric}_{trajectory}.csv")
    r = scenario_rmse(log)
    line = f"{metric:7s} {str(log.status):32s}"
    if log.status.completed:
        line += f" rmse {r.rmse_x:.3f}/{r.rmse_y:.3f}/{r.rmse_z:.3f} m  spin {r.yaw_rate_ss:6.2f} rad/s"
    print(line)
