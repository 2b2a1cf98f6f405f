"""``ftquad`` command line: run, sweep and validate scenarios.

Exit codes: 0 success (recorded divergences included), 1 config error,
2 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .controller.allocation import condition_numbers
from .controller.metrics import MetricKind
from .errors import ConfigError
from .harness.config import ScenarioConfig, dump_config, load_config, parse_fault
from .harness.report import export_csv, format_table, scenario_rmse, sweep, sweep_csv
from .harness.runner import run_scenario
from .trajectory import evaluate, max_speed

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ftquad", description="Quadrotor rotor-failure simulations.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one scenario")
    run.add_argument("--config", help="key = value config file")
    run.add_argument("--metric", help="full | half | s2 | thrust")
    run.add_argument("--fault", help="none | single:<i> | dual:<i>,<j>")
    run.add_argument("--fault-time", type=float, help="fault injection time (s)")
    run.add_argument("--trajectory", help="oval15 | oval12 | oval8 | oval5 | hover")
    run.add_argument("--out", help="CSV log path")

    sw = sub.add_parser("sweep", help="metric x trajectory x fault batch")
    sw.add_argument("--config", help="key = value config file")
    sw.add_argument("--out", required=True, help="output directory")
    sw.add_argument("--workers", type=int, default=1, help="parallel processes")
    sw.add_argument("--logs", action="store_true", help="also write one CSV log per cell")

    val = sub.add_parser("validate", help="check a config and print allocation conditioning")
    val.add_argument("--config", help="key = value config file")
    return ap


def _load(args) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    if getattr(args, "metric", None):
        cfg.metric = MetricKind.parse(args.metric)
    if getattr(args, "trajectory", None):
        cfg.trajectory, cfg.trajectory_spec = args.trajectory, None
    t_fault = getattr(args, "fault_time", None)
    t_fault = cfg.fault.t_fault if t_fault is None else t_fault
    if getattr(args, "fault", None) is not None:
        cfg.fault = parse_fault(args.fault, t_fault)
    else:
        cfg.fault = parse_fault(",".join(map(str, sorted(cfg.fault.failed))) or "none", t_fault)
    if getattr(args, "out", None) and args.command == "run":
        cfg.output_path = args.out
    return cfg.validate()


def _cmd_run(args) -> int:
    cfg = _load(args)
    log = run_scenario(cfg)
    print(f"status: {log.status}")
    if len(log) >= 2:
        r = scenario_rmse(log)
        print(f"rmse x/y/z (m): {r.rmse_x:.4f} {r.rmse_y:.4f} {r.rmse_z:.4f}")
        print(f"yaw rate, last 20% (rad/s): {r.yaw_rate_ss:.3f}")
    if cfg.output_path:
        export_csv(log, cfg.output_path)
        print(f"log written to {cfg.output_path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    log_dir = None
    if args.logs:
        log_dir = out / "logs"
        log_dir.mkdir(exist_ok=True)
    cells = sweep(cfg, cfg.sweep_metrics, cfg.sweep_trajectories, cfg.sweep_faults, args.workers, log_dir)
    (out / "sweep.csv").write_text(sweep_csv(cells))
    tables = "\n\n".join(format_table(cells, f) for f in cfg.sweep_faults)
    (out / "tables.txt").write_text(tables + "\n")
    print(tables)
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = _load(args)
    print(dump_config(cfg), end="")
    print(f"# total time {cfg.total_time:.3f} s, control period {cfg.control_period:.4f} s")
    print(f"# hover speed {cfg.params.hover_speed:.1f} rad/s, max thrust {cfg.params.f_max:.3f} N")
    if cfg.duration > 0:
        print(f"# peak reference speed {max_speed(cfg.spec):.3f} m/s")
    evaluate(cfg.spec, 0.0)
    print("# allocation condition numbers")
    for name, cond in condition_numbers(cfg.params).items():
        print(f"#   {name:9s} {cond:.4g}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"run": _cmd_run, "sweep": _cmd_sweep, "validate": _cmd_validate}[args.command]
    try:
        return handler(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
