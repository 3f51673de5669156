"""Classical RK4 time stepping with a stability-scaled step and event schedule.

The nominal step is dt = sigma*h^2 (sigma defaults to 0.1, well inside the
imaginary-axis stability limit of RK4 against the fourth-order stencil's
spectral radius of about (16/3)/h^2).  The march lands exactly on every
record boundary and snapshot time by shortening steps within each segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from .errors import ConfigurationError, InstabilityError
from .grid import FieldState, RadialGrid
from .norms import DiagnosticsRecord, diagnostics, energy, mass
from .stencil import EvolutionMode


@dataclass(frozen=True)
class StepControl:
    """Time-stepping and output schedule parameters."""

    t_end: float
    sigma: float = 0.1
    record_interval: float | None = None  # defaults to t_end/400
    snapshot_times: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.t_end > 0:
            raise ConfigurationError(f"t_end must be positive, got {self.t_end}")
        if not 0 < self.sigma <= 1:
            raise ConfigurationError(f"sigma must be in (0, 1], got {self.sigma}")
        if self.record_interval is not None and not self.record_interval > 0:
            raise ConfigurationError(
                f"record_interval must be positive, got {self.record_interval}"
            )

    @property
    def effective_record_interval(self) -> float:
        return self.record_interval if self.record_interval is not None else self.t_end / 400.0


def choose_dt(grid: RadialGrid, control: StepControl) -> float:
    """Nominal stable step dt = sigma * h^2."""
    return control.sigma * grid.h * grid.h


class EvolutionSinks:
    """Output hooks for evolve(); default implementation discards everything."""

    def on_record(self, record: DiagnosticsRecord, field: FieldState) -> None:
        pass

    def on_snapshot(self, field: FieldState, record: DiagnosticsRecord | None = None) -> None:
        pass


class RecordingSinks(EvolutionSinks):
    """Collects diagnostics rows (and optionally field snapshots) in memory."""

    def __init__(self, keep_fields: bool = False):
        self.records: list[DiagnosticsRecord] = []
        self.snapshots: list[FieldState] = []
        self.keep_fields = keep_fields

    def on_record(self, record, field):
        self.records.append(record)

    def on_snapshot(self, field, record=None):
        if self.keep_fields:
            self.snapshots.append(field.copy())


def _advance_in_place(u: np.ndarray, nsteps: int, dt: float, grid: RadialGrid,
                      mode: EvolutionMode, work) -> None:
    k1, k2, k3, k4, tmp = work
    _kernels.rk4_advance(u, nsteps, dt, grid.h, grid.dim, mode.p,
                         mode.nonlinear, k1, k2, k3, k4, tmp)


def _work_buffers(n: int):
    return tuple(np.empty(n + 1, dtype=np.complex128) for _ in range(5))


def rk4_step(field: FieldState, dt: float, mode: EvolutionMode) -> FieldState:
    """One classical RK4 step; returns a new state with t advanced by dt."""
    if not dt > 0:
        raise ConfigurationError(f"dt must be positive, got {dt}")
    max_abs_before = float(np.max(np.abs(field.u)))
    out = field.copy()
    _advance_in_place(out.u, 1, dt, field.grid, mode, _work_buffers(field.grid.n))
    out.t = field.t + dt
    if not out.is_finite():
        raise InstabilityError(field.t, max_abs_before)
    return out


def _event_times(t0: float, control: StepControl) -> list[tuple[float, bool, bool]]:
    """Sorted (time, is_record, is_snapshot) events in (t0, t_end]."""
    t_end = control.t_end
    ri = control.effective_record_interval
    tol = 1e-9 * max(t_end, ri)
    events: dict[float, list[bool]] = {}

    def add(t, is_record, is_snapshot):
        for key in events:
            if abs(key - t) <= tol:
                events[key][0] |= is_record
                events[key][1] |= is_snapshot
                return
        events[t] = [is_record, is_snapshot]

    k = 1
    while k * ri <= t_end + tol:
        t = min(k * ri, t_end)
        if t > t0 + tol:
            add(t, True, False)
        k += 1
    for t in control.snapshot_times:
        if t0 + tol < t <= t_end + tol:
            add(min(t, t_end), False, True)
    add(t_end, False, False)
    return sorted((t, flags[0], flags[1]) for t, flags in events.items())


def evolve(field: FieldState, control: StepControl, mode: EvolutionMode,
           sinks: EvolutionSinks | None = None) -> FieldState:
    """Advance to t_end, emitting diagnostics and snapshots along the way.

    Diagnostics rows are computed at step boundaries only; the row at the
    starting time is always emitted.  Raises InstabilityError (carrying the
    last good row) if the field goes non-finite.
    """
    if sinks is None:
        sinks = EvolutionSinks()
    state = field.copy()
    grid = state.grid
    dt0 = choose_dt(grid, control)
    mass0 = mass(state)
    energy0 = energy(state, p=mode.p)
    tol = 1e-9 * control.t_end

    def make_record(f):
        return diagnostics(f, p=mode.p, mass0=mass0, energy0=energy0)

    last_record = make_record(state)
    sinks.on_record(last_record, state)
    if any(abs(t - state.t) <= tol for t in control.snapshot_times):
        sinks.on_snapshot(state, record=last_record)

    work = _work_buffers(grid.n)
    t_prev = state.t
    for t_next, is_record, is_snapshot in _event_times(state.t, control):
        span = t_next - t_prev
        if span > tol:
            nsteps = max(1, math.ceil(span / dt0 - 1e-9))
            dtseg = span / nsteps
            max_abs_before = float(np.max(np.abs(state.u)))
            _advance_in_place(state.u, nsteps, dtseg, grid, mode, work)
            state.t = t_next
            if not state.is_finite():
                raise InstabilityError(t_prev, max_abs_before, last_record)
        t_prev = t_next
        record = None
        if is_record:
            record = make_record(state)
            last_record = record
            sinks.on_record(record, state)
        if is_snapshot:
            sinks.on_snapshot(state, record=record)
    return state
