"""RMSE reports, CSV export and scenario sweeps."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..controller.metrics import MetricKind
from ..errors import ConfigError, EmptyWindow, FtquadError
from .config import ScenarioConfig, parse_fault
from .runner import COMPLETED, RunLog, RunStatus, run_scenario

CSV_COLUMNS = (
    ["t", "x", "y", "z", "xd", "yd", "zd", "vx", "vy", "vz"]
    + [f"r{i}{j}" for i in range(1, 4) for j in range(1, 4)]
    + ["wx", "wy", "wz", "f", "m1", "m2", "m3", "w1", "w2", "w3", "w4", "erx", "ery", "erz", "alt"]
)
SWEEP_COLUMNS = ["metric", "trajectory", "fault", "rmse_x", "rmse_y", "rmse_z", "yaw_rate_ss", "completed"]
MISSING = "-"


@dataclass(frozen=True)
class RmseReport:
    rmse_x: float
    rmse_y: float
    rmse_z: float
    yaw_rate_ss: float
    max_tilt: float
    completed: bool
    max_yaw_rate: float = 0.0

    @property
    def rmse(self) -> np.ndarray:
        return np.array([self.rmse_x, self.rmse_y, self.rmse_z])


def _rms(err: np.ndarray) -> np.ndarray:
    # scaling by the peak keeps constant signals exact and avoids overflow
    peak = np.max(np.abs(err), axis=0)
    scale = np.where(peak > 0, peak, 1.0)
    return peak * np.sqrt(np.mean((err / scale) ** 2, axis=0))


def rmse(log: RunLog, t_start: float = 0.0) -> RmseReport:
    """Per-axis RMS position error over ``t >= t_start``.

    The yaw-rate statistic is the mean body z rate over the last 20% of the
    log.
    """
    mask = log.t >= t_start
    if np.count_nonzero(mask) < 2:
        raise EmptyWindow(f"fewer than 2 samples after t = {t_start}")
    ex, ey, ez = _rms(log.position_error[mask])
    tail = log.Omega[int(np.floor(0.8 * len(log))):, 2]
    return RmseReport(
        float(ex),
        float(ey),
        float(ez),
        float(np.mean(tail)),
        float(np.max(log.tilt)),
        log.status.completed,
        float(np.max(np.abs(log.Omega[:, 2]))),
    )


def scenario_rmse(log: RunLog) -> RmseReport:
    """RMSE from the fault time for fault runs, from zero otherwise."""
    return rmse(log, log.t_fault if log.t_fault is not None else 0.0)


def log_rows(log: RunLog) -> np.ndarray:
    """The log as a ``(n, 34)`` array in :data:`CSV_COLUMNS` order."""
    return np.column_stack(
        [log.t, log.p, log.p_d, log.v, log.R, log.Omega, log.f, log.M, log.w, log.e_R, -log.p[:, 2]]
    )


def _write_rows(handle, rows: np.ndarray):
    handle.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows.tolist():
        # repr gives the shortest string that parses back to the same float
        handle.write(",".join(map(repr, row)) + "\n")


def export_csv(log: RunLog, path) -> None:
    try:
        with open(path, "w", newline="") as fh:
            _write_rows(fh, log_rows(log))
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def csv_text(log: RunLog) -> str:
    buf = io.StringIO()
    _write_rows(buf, log_rows(log))
    return buf.getvalue()


def read_csv(path) -> RunLog:
    """Parse a file written by :func:`export_csv`.

    Only the exported columns come back; ``v_d`` and ``e_Omega`` are zero.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_COLUMNS:
            raise ValueError("unexpected CSV header")
        data = np.array([[float(v) for v in row] for row in reader], dtype=float).reshape(-1, len(CSV_COLUMNS))
    log = RunLog.empty(len(data))
    log.t = data[:, 0]
    log.p, log.p_d, log.v = data[:, 1:4], data[:, 4:7], data[:, 7:10]
    log.R, log.Omega = data[:, 10:19], data[:, 19:22]
    log.f, log.M, log.w = data[:, 22], data[:, 23:26], data[:, 26:30]
    log.e_R = data[:, 30:33]
    return log


@dataclass(frozen=True)
class SweepCell:
    metric: str
    trajectory: str
    fault: str
    status: RunStatus
    report: RmseReport | None

    @property
    def completed(self) -> bool:
        return self.status.completed and self.report is not None

    def row(self) -> list[str]:
        head = [self.metric, self.trajectory, self.fault]
        if not self.completed:
            yaw = repr(self.report.yaw_rate_ss) if self.report else MISSING
            return head + [MISSING] * 3 + [yaw, "false"]
        r = self.report
        return head + [repr(r.rmse_x), repr(r.rmse_y), repr(r.rmse_z), repr(r.yaw_rate_ss), "true"]


def _fault_label(text: str) -> str:
    return parse_fault(text).label


def _run_cell(args) -> SweepCell:
    base, metric, trajectory, fault_text, log_dir = args
    fault = parse_fault(fault_text, base.fault.t_fault)
    cfg = base.replace(metric=MetricKind.parse(metric), trajectory=trajectory, trajectory_spec=None, fault=fault)
    label = fault.label
    try:
        log = run_scenario(cfg)
    except FtquadError as exc:
        return SweepCell(cfg.metric.value, trajectory, label, RunStatus("error", 0.0, type(exc).__name__), None)
    if log_dir is not None:
        export_csv(log, Path(log_dir) / f"{cfg.metric.value}_{trajectory}_{label.replace(':', '-').replace(',', '')}.csv")
    try:
        report = scenario_rmse(log)
    except EmptyWindow:
        report = None
    return SweepCell(cfg.metric.value, trajectory, label, log.status, report)


def sweep(base: ScenarioConfig, metrics, trajectories, faults, workers: int = 1, log_dir=None) -> list[SweepCell]:
    """Run the Cartesian product of ``metrics x trajectories x faults``.

    Cells are independent, so ``workers > 1`` runs them in a process pool;
    the returned order is always the product order.
    """
    metrics, trajectories, faults = list(metrics), list(trajectories), list(faults)
    if not metrics or not trajectories or not faults:
        raise ConfigError("sweep needs non-empty metric, trajectory and fault lists")
    for f in faults:
        parse_fault(f)
    jobs = [(base, m, tr, f, log_dir) for f in faults for tr in trajectories for m in metrics]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run_cell, jobs))
    return [_run_cell(j) for j in jobs]


def sweep_csv(cells: list[SweepCell]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for c in cells:
        writer.writerow(c.row())
    return buf.getvalue()


def read_sweep_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def format_table(cells: list[SweepCell], fault: str) -> str:
    """Text table for one fault mode: trajectories as rows, metrics as columns.

    Each entry is ``x/y/z`` RMSE in metres, or ``-`` for a run that did not
    complete.
    """
    label = _fault_label(fault)
    chosen = [c for c in cells if c.fault == label]
    metrics = list(dict.fromkeys(c.metric for c in chosen))
    trajs = list(dict.fromkeys(c.trajectory for c in chosen))
    lookup = {(c.metric, c.trajectory): c for c in chosen}
    width = 20
    lines = [f"fault: {label}", "trajectory".ljust(12) + "".join(m.ljust(width) for m in metrics)]
    for tr in trajs:
        entries = []
        for m in metrics:
            c = lookup.get((m, tr))
            if c is None or not c.completed:
                entries.append(MISSING.ljust(width))
            else:
                entries.append("/".join(f"{v:.3f}" for v in c.report.rmse).ljust(width))
        lines.append(tr.ljust(12) + "".join(entries))
    return "\n".join(lines)


__all__ = [
    "CSV_COLUMNS",
    "COMPLETED",
    "RmseReport",
    "SweepCell",
    "csv_text",
    "export_csv",
    "format_table",
    "read_csv",
    "read_sweep_csv",
    "rmse",
    "scenario_rmse",
    "sweep",
    "sweep_csv",
]
