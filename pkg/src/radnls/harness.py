"""Experiment orchestration: configuration, runs, studies, fits, and file output.

Output layout per run (directory out/label/):
    timeseries.csv            t,linf,l6,l14,h2,mass,energy,mass_rel_err,energy_rel_err,besov
    profile_t{T}.csv          r,re,im,abs          (one per snapshot time)
    spectrum_t{T}.csv         k,abs_uhat           (one per snapshot time)
    summary.txt               key=value provenance and final/extremal values
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import (ConfigurationError, FitError, InstabilityError,
                     OutputDirectoryError)
from .grid import FieldState, InitialCondition, build_grid, init_field
from .norms import DiagnosticsRecord
from .spectral import besov_norm, transform
from .stencil import EvolutionMode
from .stepper import EvolutionSinks, StepControl, choose_dt, evolve

_FAMILY_ALIASES = {
    "gaussian": "gaussian",
    "ring": "ring",
    "osc-gaussian": "oscillatory_gaussian",
    "oscillatory_gaussian": "oscillatory_gaussian",
    "table": "custom_table",
    "custom_table": "custom_table",
}


@dataclass(frozen=True)
class OutputToggles:
    timeseries: bool = True
    profiles: bool = True
    spectra: bool = True
    besov: bool = True


@dataclass(frozen=True)
class RunConfig:
    """Full experiment description."""

    ic: InitialCondition
    r_max: float
    n: int
    dim: int = 5
    mode: EvolutionMode = EvolutionMode()
    control: StepControl = StepControl(t_end=0.04)
    out_dir: Path | None = None
    toggles: OutputToggles = OutputToggles()
    label: str = "run"


@dataclass
class RunResult:
    status: int  # 0 success, 3 instability
    out_dir: Path | None
    records: list[DiagnosticsRecord]
    summary: dict
    final_state: FieldState | None = None
    error: InstabilityError | None = None


@dataclass
class ConvergenceRow:
    n: int
    r_max: float
    value_at_origin: float
    max_value: float
    origin_deviation: float = 0.0
    max_deviation: float = 0.0


@dataclass
class ConvergenceReport:
    rows: list[ConvergenceRow]
    reference_index: int


def snapshot_schedule(t_end: float, count: int = 11) -> tuple[float, ...]:
    """count evenly spaced times on [0, t_end], endpoints included."""
    if count < 2:
        return (0.0, t_end)
    return tuple(i * t_end / (count - 1) for i in range(count))


# ---------------------------------------------------------------------------
# configuration parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="radnls", description="Radial defocusing NLS simulator (d=5, quintic)")
    p.add_argument("--ic", choices=sorted(set(_FAMILY_ALIASES)), default=None)
    p.add_argument("--amplitude", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--tmax", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--linear", action="store_true", default=None)
    p.add_argument("--snapshots", type=int, default=None)
    p.add_argument("--record-interval", type=float, default=None, dest="record_interval")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--config", type=str, default=None)
    p.add_argument("--label", type=str, default=None)
    return p


_DEFAULTS = {
    "ic": "gaussian",
    "amplitude": 10.0,
    "alpha": 10.0,
    "rmax": 100.0,
    "n": 10000,
    "dim": 5,
    "p": 5,
    "tmax": 0.04,
    "sigma": 0.1,
    "linear": False,
    "snapshots": 11,
    "record_interval": None,
    "out": "runs",
    "label": None,
    "table_path": None,
}


def parse_config(argv: list[str]) -> RunConfig:
    """Build a RunConfig from CLI flags and an optional JSON config file.

    CLI values override file values; anything left unset falls back to
    defaults (d=5, p=5, sigma=0.1).
    """
    ns = _build_parser().parse_args(argv)
    settings = dict(_DEFAULTS)

    if ns.config is not None:
        path = Path(ns.config)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        try:
            file_settings = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config file is not valid JSON: {exc}") from exc
        unknown = set(file_settings) - set(_DEFAULTS)
        if unknown:
            raise ConfigurationError(f"unknown config file keys: {sorted(unknown)}")
        settings.update(file_settings)

    for key in ("ic", "amplitude", "alpha", "rmax", "n", "dim", "p", "tmax",
                "sigma", "linear", "snapshots", "record_interval", "out", "label"):
        val = getattr(ns, key)
        if val is not None:
            settings[key] = val

    family_key = str(settings["ic"])
    if family_key not in _FAMILY_ALIASES:
        raise ConfigurationError(f"unknown initial-condition family {family_key!r}")
    family = _FAMILY_ALIASES[family_key]

    table = None
    if family == "custom_table":
        if settings["table_path"] is None:
            raise ConfigurationError("custom_table family requires table_path in the config file")
        raw = np.loadtxt(settings["table_path"], dtype=complex, ndmin=1)
        table = raw

    ic = InitialCondition(family=family, amplitude=float(settings["amplitude"]),
                          alpha=float(settings["alpha"]), table=table)
    grid = build_grid(float(settings["rmax"]), int(settings["n"]), int(settings["dim"]))
    mode = EvolutionMode(kind="linear" if settings["linear"] else "nonlinear",
                         p=int(settings["p"]))
    t_end = float(settings["tmax"])
    control = StepControl(
        t_end=t_end,
        sigma=float(settings["sigma"]),
        record_interval=settings["record_interval"],
        snapshot_times=snapshot_schedule(t_end, int(settings["snapshots"])),
    )

    label = settings["label"] or f"{family}_n{grid.n}"
    out_root = Path(settings["out"])
    out_dir = out_root / label
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".writable"
        probe.touch()
        probe.unlink()
    except OSError as exc:
        raise OutputDirectoryError(f"output directory {out_dir} is not writable: {exc}") from exc

    return RunConfig(ic=ic, r_max=grid.r_max, n=grid.n, dim=grid.dim, mode=mode,
                     control=control, out_dir=out_dir, label=label)


# ---------------------------------------------------------------------------
# experiment execution

def _fmt(x: float) -> str:
    return repr(float(x))


class _ExperimentSinks(EvolutionSinks):
    def __init__(self, config: RunConfig):
        self.config = config
        self.records: list[DiagnosticsRecord] = []
        self.snapshot_times: list[float] = []

    def on_record(self, record, field):
        self.records.append(record)

    def on_snapshot(self, field, record=None):
        cfg = self.config
        self.snapshot_times.append(field.t)
        tag = f"t{field.t:.6f}"
        if cfg.toggles.profiles and cfg.out_dir is not None:
            r = field.grid.nodes
            with open(cfg.out_dir / f"profile_{tag}.csv", "w") as fh:
                fh.write("r,re,im,abs\n")
                absu = np.abs(field.u)
                for j in range(field.grid.n + 1):
                    fh.write(f"{_fmt(r[j])},{_fmt(field.u[j].real)},"
                             f"{_fmt(field.u[j].imag)},{_fmt(absu[j])}\n")
        if cfg.toggles.spectra or cfg.toggles.besov:
            spec = transform(field)
            if cfg.toggles.spectra and cfg.out_dir is not None:
                k = spec.k
                abs_uhat = np.abs(spec.uhat)
                with open(cfg.out_dir / f"spectrum_{tag}.csv", "w") as fh:
                    fh.write("k,abs_uhat\n")
                    for j in range(len(k)):
                        fh.write(f"{_fmt(k[j])},{_fmt(abs_uhat[j])}\n")
            if cfg.toggles.besov and record is not None:
                record.besov = float(besov_norm(spec))


def _write_timeseries(config: RunConfig, records):
    if config.out_dir is None or not config.toggles.timeseries:
        return
    with open(config.out_dir / "timeseries.csv", "w") as fh:
        fh.write(",".join(DiagnosticsRecord.CSV_COLUMNS) + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")


def _write_summary(config: RunConfig, summary: dict):
    if config.out_dir is None:
        return
    with open(config.out_dir / "summary.txt", "w") as fh:
        for key, val in summary.items():
            fh.write(f"{key}={val}\n")


def run_experiment(config: RunConfig) -> RunResult:
    """Evolve the configured problem, writing all enabled outputs.

    Returns status 0 on success, 3 on instability (partial outputs are
    retained and the summary marks the failure time).
    """
    grid = build_grid(config.r_max, config.n, config.dim)
    field = init_field(grid, config.ic)
    sinks = _ExperimentSinks(config)
    t_start = time.perf_counter()

    error = None
    final_state = None
    try:
        final_state = evolve(field, config.control, config.mode, sinks)
        status = 0
    except InstabilityError as exc:
        error = exc
        status = 3

    wall = time.perf_counter() - t_start
    records = sinks.records
    _write_timeseries(config, records)

    summary = {
        "label": config.label,
        "ic_family": config.ic.family,
        "amplitude": config.ic.amplitude,
        "alpha": config.ic.alpha,
        "r_max": config.r_max,
        "n": config.n,
        "dim": config.dim,
        "mode": config.mode.kind,
        "p": config.mode.p,
        "sigma": config.control.sigma,
        "t_end": config.control.t_end,
        "dt_nominal": choose_dt(grid, config.control),
        "status": status,
        "wall_time_s": f"{wall:.3f}",
    }
    if records:
        last = records[-1]
        summary.update({
            "final_t": last.t,
            "final_linf": last.linf,
            "final_l6": last.l6,
            "final_l14": last.l14,
            "final_h2": last.h2,
            "final_mass": last.mass,
            "final_energy": last.energy,
            "max_mass_rel_err": max(r.mass_rel_err for r in records),
            "max_energy_rel_err": max(r.energy_rel_err for r in records),
        })
    if error is not None:
        summary["failure_time"] = error.t
    _write_summary(config, summary)

    return RunResult(status=status, out_dir=config.out_dir, records=records,
                     summary=summary, final_state=final_state, error=error)


def convergence_study(base: RunConfig, matrix: list[tuple[int, float]]) -> ConvergenceReport:
    """One evolution per (n, r_max) entry; deviations against the finest grid."""
    rows = []
    for n, r_max in matrix:
        grid = build_grid(r_max, n, base.dim)
        field = init_field(grid, base.ic)
        final = evolve(field, base.control, base.mode)
        absu = np.abs(final.u)
        rows.append(ConvergenceRow(n=n, r_max=r_max,
                                   value_at_origin=float(absu[0]),
                                   max_value=float(absu.max())))
    ref = min(range(len(rows)), key=lambda i: rows[i].r_max / rows[i].n)
    origin_ref = rows[ref].value_at_origin
    max_ref = rows[ref].max_value
    for row in rows:
        row.origin_deviation = abs(row.value_at_origin - origin_ref) / abs(origin_ref)
        row.max_deviation = abs(row.max_value - max_ref) / abs(max_ref)
    return ConvergenceReport(rows=rows, reference_index=ref)


def fit_decay_rate(timeseries, window: tuple[float, float]):
    """Least-squares slope of log(value) vs log(t) over the window.

    Returns (slope, residual) where residual is the RMS misfit of the
    log-log line.  Requires at least 5 in-window points, all positive,
    and a positive lower window edge.
    """
    t_lo, t_hi = window
    if not t_lo > 0:
        raise FitError(f"window start must be positive, got {t_lo}")
    pairs = [(float(t), float(v)) for t, v in timeseries]
    selected = [(t, v) for t, v in pairs if t_lo <= t <= t_hi]
    if len(selected) < 5:
        raise FitError(f"need at least 5 points in the window, got {len(selected)}")
    if any(v <= 0 for _, v in selected):
        raise FitError("all values in the window must be positive")
    log_t = np.log([t for t, _ in selected])
    log_v = np.log([v for _, v in selected])
    slope, intercept = np.polyfit(log_t, log_v, 1)
    resid = np.sqrt(np.mean((log_v - (slope * log_t + intercept)) ** 2))
    return float(slope), float(resid)


def linear_constancy_check(config: RunConfig) -> float:
    """Max relative change of |uhat| across the run's snapshot times.

    The linear flow preserves |uhat| exactly in the continuum, so this is
    a combined check of the stepping and the transform quadrature.
    """
    if config.mode.kind != "linear":
        raise ConfigurationError("linear_constancy_check requires linear mode")
    times = config.control.snapshot_times
    if len(times) < 3:
        times = snapshot_schedule(config.control.t_end, 3)
    control = replace(config.control, snapshot_times=tuple(times))

    grid = build_grid(config.r_max, config.n, config.dim)
    field = init_field(grid, config.ic)

    captured: list[FieldState] = []

    class _Capture(EvolutionSinks):
        def on_snapshot(self, f, record=None):
            captured.append(f.copy())

    evolve(field, control, config.mode, _Capture())
    spectra = [np.abs(transform(f).uhat) for f in captured]
    base = spectra[0]
    scale = float(base.max())
    if scale == 0.0:
        return 0.0
    return max(float(np.max(np.abs(s - base))) / scale for s in spectra[1:])
