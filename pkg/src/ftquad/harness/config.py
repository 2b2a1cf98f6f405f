"""Scenario configuration and the flat ``key = value`` config format.

Example file::

    # baseline run
    trajectory = oval15
    metric = full
    fault.failed = none
    params.k_rd = 1e-4, 1e-4, 6.6e-3
    gains.k_R = 0.08, 0.08, 0.05

Blank lines and ``#`` comments are ignored.  Vector values are comma
separated.  Unknown keys are a :class:`ConfigError`.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..controller.geometric import Gains
from ..controller.metrics import MetricKind
from ..dynamics import FaultConfig, QuadParams, QuadState
from ..errors import ConfigError
from ..trajectory import HoverSpec, OvalSpec, named


def parse_fault(text: str, t_fault: float = 1.0) -> FaultConfig:
    """``none``, ``single:<i>``, ``dual:<i>,<j>`` or a bare rotor list."""
    s = str(text).strip().lower()
    if s in ("", "none", "-"):
        return FaultConfig(frozenset(), t_fault)
    kind, _, rest = s.partition(":")
    if not rest:
        kind, rest = "", kind
    try:
        rotors = frozenset(int(r) for r in rest.split(",") if r.strip())
    except ValueError:
        raise ConfigError(f"cannot parse fault {text!r}") from None
    if kind == "single" and len(rotors) != 1:
        raise ConfigError(f"single fault needs one rotor, got {text!r}")
    if kind == "dual" and len(rotors) != 2:
        raise ConfigError(f"dual fault needs two rotors, got {text!r}")
    if kind not in ("", "single", "dual"):
        raise ConfigError(f"unknown fault kind {kind!r}")
    return FaultConfig(rotors, t_fault)


@dataclass(eq=False)
class ScenarioConfig:
    params: QuadParams = field(default_factory=QuadParams)
    gains: Gains = field(default_factory=Gains)
    trajectory: str = "oval15"
    trajectory_spec: OvalSpec | HoverSpec | None = None
    metric: MetricKind = MetricKind.FULL
    fault: FaultConfig = field(default_factory=lambda: FaultConfig(frozenset(), 1.0))
    t_total: float | None = None
    trajectory_start: float = 3.0
    hold_time: float = 2.0
    dt_plant: float = 1e-3
    control_divisor: int = 2
    initial_state: QuadState | None = None
    output_path: str | None = None
    max_position_error: float = 2.0
    max_moment: float = 1e3
    sweep_metrics: list = field(default_factory=lambda: [m.value for m in MetricKind])
    sweep_trajectories: list = field(default_factory=lambda: ["oval15", "oval12", "oval8", "oval5"])
    sweep_faults: list = field(default_factory=lambda: ["none", "single:1", "dual:1,2"])

    def __post_init__(self):
        self.metric = MetricKind.parse(self.metric)

    @property
    def spec(self):
        return self.trajectory_spec if self.trajectory_spec is not None else named(self.trajectory)

    @property
    def duration(self) -> float:
        return float(self.spec.duration)

    @property
    def total_time(self) -> float:
        if self.t_total is not None:
            return float(self.t_total)
        return self.trajectory_start + self.duration + self.hold_time

    @property
    def control_period(self) -> float:
        return self.dt_plant * self.control_divisor

    def start_state(self) -> QuadState:
        if self.initial_state is not None:
            return self.initial_state
        return QuadState.hover(self.spec.center)

    def validate(self) -> "ScenarioConfig":
        if not 0.0 < self.dt_plant <= 0.01:
            raise ConfigError("dt_plant must lie in (0, 0.01]")
        if int(self.control_divisor) != self.control_divisor or self.control_divisor < 1:
            raise ConfigError("control_divisor must be a positive integer")
        if self.trajectory_start < 0 or self.hold_time < 0:
            raise ConfigError("trajectory_start and hold_time must be non-negative")
        if self.total_time <= 0:
            raise ConfigError("t_total must be positive")
        if self.fault.failed and self.total_time < self.fault.t_fault:
            raise ConfigError("t_total must not precede the fault time")
        if self.max_position_error <= 0 or self.max_moment <= 0:
            raise ConfigError("divergence thresholds must be positive")
        self.spec  # resolves the trajectory name
        self.params.validate()
        return self

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


def _floats(value: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in value.split(",") if v.strip()])
    except ValueError:
        raise ConfigError(f"expected numbers, got {value!r}") from None


def _float(value: str) -> float:
    v = _floats(value)
    if v.size != 1:
        raise ConfigError(f"expected a single number, got {value!r}")
    return float(v[0])


def _vector(value: str, n: int = 3) -> np.ndarray:
    v = _floats(value)
    if v.size == 1:
        return np.full(n, v[0])
    if v.size != n:
        raise ConfigError(f"expected {n} numbers, got {value!r}")
    return v


def _list(value: str) -> list[str]:
    # fault lists use ';' because dual faults contain commas
    sep = ";" if ";" in value or ":" in value else ","
    return [v.strip() for v in value.split(sep) if v.strip()]


def parse_config_text(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        entries[key.strip()] = value.strip()
    return entries


_PARAM_SCALARS = {"m", "d", "k_f", "k_m", "k_td", "g", "omega_max"}
_TRAJ_KEYS = {"amplitude", "duration", "ramp_time", "center", "laps"}


def build_config(entries: dict[str, str], base: ScenarioConfig | None = None) -> ScenarioConfig:
    """Apply flat key/value entries on top of ``base`` (defaults if None)."""
    cfg = base.replace() if base is not None else ScenarioConfig()
    params: dict = {}
    gains: dict = {}
    traj: dict = {}
    fault_failed = None
    fault_time = None
    init_p = None
    for key, value in entries.items():
        section, _, name = key.partition(".")
        try:
            if section == "params" and name in _PARAM_SCALARS:
                params[name] = _float(value)
            elif section == "params" and name == "J":
                v = _floats(value)
                params["J"] = np.diag(v) if v.size == 3 else v.reshape(3, 3)
            elif section == "params" and name == "k_rd":
                params["k_rd"] = _vector(value)
            elif section == "gains" and name in ("k_p", "k_v", "k_R", "k_Omega"):
                gains[name] = _vector(value)
            elif section == "trajectory" and name == "":
                cfg.trajectory = value.strip()
            elif section == "trajectory" and name in _TRAJ_KEYS:
                traj[name] = _vector(value) if name in ("amplitude", "center") else _float(value)
            elif key == "metric":
                cfg.metric = MetricKind.parse(value)
            elif key == "fault.failed":
                fault_failed = value
            elif key == "fault.t_fault":
                fault_time = _float(value)
            elif key in ("t_total", "trajectory_start", "hold_time", "dt_plant", "max_position_error", "max_moment"):
                setattr(cfg, key, _float(value))
            elif key == "control_divisor":
                cfg.control_divisor = int(_float(value))
            elif key == "output_path":
                cfg.output_path = value
            elif key == "initial.p":
                init_p = _vector(value)
            elif key == "sweep.metrics":
                cfg.sweep_metrics = [MetricKind.parse(v).value for v in _list(value)]
            elif key == "sweep.trajectories":
                cfg.sweep_trajectories = _list(value)
            elif key == "sweep.faults":
                cfg.sweep_faults = _list(value)
            else:
                raise ConfigError(f"unknown config key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"{key}: {exc}") from None

    if params:
        cfg.params = cfg.params.replace(**params)
    if gains:
        g = {k: getattr(cfg.gains, k) for k in ("k_p", "k_v", "k_R", "k_Omega")}
        g.update(gains)
        cfg.gains = Gains(**g)
    if traj or cfg.trajectory.lower() == "oval":
        base_spec = cfg.spec if cfg.trajectory.lower() != "oval" else OvalSpec()
        if isinstance(base_spec, HoverSpec):
            cfg.trajectory_spec = HoverSpec(traj.get("center", base_spec.center))
        else:
            fields_ = dict(
                amplitude=base_spec.amplitude,
                duration=base_spec.duration,
                center=base_spec.center,
                laps=base_spec.laps,
            )
            fields_.update({k: v for k, v in traj.items() if k != "laps"})
            if "laps" in traj:
                fields_["laps"] = int(traj["laps"])
            if "ramp_time" not in traj and "duration" in traj:
                fields_["ramp_time"] = None
            else:
                fields_["ramp_time"] = traj.get("ramp_time", base_spec.ramp_time)
            cfg.trajectory_spec = OvalSpec(**fields_)
    if fault_failed is not None or fault_time is not None:
        t_f = fault_time if fault_time is not None else cfg.fault.t_fault
        cfg.fault = parse_fault(fault_failed, t_f) if fault_failed is not None else FaultConfig(cfg.fault.failed, t_f)
    if init_p is not None:
        cfg.initial_state = QuadState.hover(init_p)
    return cfg


def load_config(path, base: ScenarioConfig | None = None) -> ScenarioConfig:
    text = Path(path).read_text()
    return build_config(parse_config_text(text), base)


def _fmt(v) -> str:
    v = np.asarray(v, dtype=float).ravel()
    return ", ".join(repr(float(x)) for x in v)


def dump_config(cfg: ScenarioConfig) -> str:
    """Render ``cfg`` in the flat config format (inverse of :func:`build_config`)."""
    p, g = cfg.params, cfg.gains
    lines = [
        f"trajectory = {cfg.trajectory}",
        f"metric = {cfg.metric.value}",
        f"fault.failed = {','.join(str(i) for i in sorted(cfg.fault.failed)) or 'none'}",
        f"fault.t_fault = {cfg.fault.t_fault!r}",
        f"trajectory_start = {cfg.trajectory_start!r}",
        f"hold_time = {cfg.hold_time!r}",
        f"dt_plant = {cfg.dt_plant!r}",
        f"control_divisor = {cfg.control_divisor}",
        f"max_position_error = {cfg.max_position_error!r}",
        f"max_moment = {cfg.max_moment!r}",
    ]
    if cfg.t_total is not None:
        lines.append(f"t_total = {cfg.t_total!r}")
    if cfg.output_path:
        lines.append(f"output_path = {cfg.output_path}")
    for name in ("m", "d", "k_f", "k_m", "k_td", "g", "omega_max"):
        lines.append(f"params.{name} = {getattr(p, name)!r}")
    lines.append(f"params.J = {_fmt(p.J)}")
    lines.append(f"params.k_rd = {_fmt(p.k_rd)}")
    for name in ("k_p", "k_v", "k_R", "k_Omega"):
        lines.append(f"gains.{name} = {_fmt(getattr(g, name))}")
    if isinstance(cfg.trajectory_spec, OvalSpec):
        s = cfg.trajectory_spec
        lines += [
            f"trajectory.amplitude = {_fmt(s.amplitude)}",
            f"trajectory.duration = {s.duration!r}",
            f"trajectory.ramp_time = {s.ramp_time!r}",
            f"trajectory.center = {_fmt(s.center)}",
            f"trajectory.laps = {s.laps}",
        ]
    lines.append(f"sweep.metrics = {', '.join(cfg.sweep_metrics)}")
    lines.append(f"sweep.trajectories = {', '.join(cfg.sweep_trajectories)}")
    lines.append(f"sweep.faults = {'; '.join(cfg.sweep_faults)}")
    return "\n".join(lines) + "\n"
