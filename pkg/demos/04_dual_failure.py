"""Two opposing rotors stop: only one body moment is left.

The surviving pair can still steer the thrust axis because the vehicle spins,
sweeping that single moment around.  Compare metrics on a slow and a fast
oval.
"""

from ftquad.dynamics import FaultConfig
from ftquad.harness import ScenarioConfig, run_scenario, scenario_rmse

for trajectory in ("oval15", "oval5"):
    print(trajectory)
    for metric in ("full", "half", "s2", "thrust"):
        log = run_scenario(ScenarioConfig(metric=metric, trajectory=trajectory, fault=FaultConfig(frozenset({1, 2}), 1.0)))
        if log.status.completed:
            r = scenario_rmse(log)
            print(f"  {metric:7s} rmse {r.rmse_x:.3f}/{r.rmse_y:.3f}/{r.rmse_z:.3f} m  spin {r.yaw_rate_ss:6.2f} rad/s")
        else:
            print(f"  {metric:7s} {log.status}")
