import time

import pytest

from ftquad.harness import ScenarioConfig, sweep

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def full_sweep():
    """The 4 metrics x 4 ovals x 3 fault modes sweep, run once per session."""
    base = ScenarioConfig()
    t0 = time.perf_counter()
    cells = sweep(base, base.sweep_metrics, base.sweep_trajectories, base.sweep_faults)
    return cells, time.perf_counter() - t0


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {line}")
