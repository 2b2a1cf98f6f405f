from .config import ScenarioConfig, build_config, dump_config, load_config, parse_config_text, parse_fault
from .report import (
    CSV_COLUMNS,
    RmseReport,
    SweepCell,
    csv_text,
    export_csv,
    format_table,
    read_csv,
    read_sweep_csv,
    rmse,
    scenario_rmse,
    sweep,
    sweep_csv,
)
from .runner import RunLog, RunStatus, run_scenario

__all__ = [
    "CSV_COLUMNS",
    "RmseReport",
    "RunLog",
    "RunStatus",
    "ScenarioConfig",
    "SweepCell",
    "build_config",
    "csv_text",
    "dump_config",
    "export_csv",
    "format_table",
    "load_config",
    "parse_config_text",
    "parse_fault",
    "read_csv",
    "read_sweep_csv",
    "rmse",
    "run_scenario",
    "scenario_rmse",
    "sweep",
    "sweep_csv",
]
