"""Full metric x trajectory x fault sweep, printed as RMSE tables.

Takes a couple of minutes on one core; pass a worker count to parallelise.
"""

import sys

from ftquad.harness import ScenarioConfig, format_table, sweep, sweep_csv

workers = int(sys.argv[1]) if len(sys.argv) > 1 else 1
base = ScenarioConfig()
cells = sweep(base, base.sweep_metrics, base.sweep_trajectories, base.sweep_faults, workers=workers)
for fault in base.sweep_faults:
    print(format_table(cells, fault))
    print()
with open("sweep.csv", "w") as fh:
    fh.write(sweep_csv(cells))
print("table written to sweep.csv")
