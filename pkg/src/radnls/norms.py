"""Quadrature-based norms and invariants on radial fields.

All integrals run over [0, r_max] in the radial variable only; the caller
supplies the r^(d-1) weight and no angular surface constant is ever
applied.  With that convention the analytic ||Delta u||_L2 of the Gaussian
initial data matches the reference value 20.2791.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from .errors import ConfigurationError
from .grid import FieldState, RadialGrid
from .stencil import apply_laplacian


@dataclass
class DiagnosticsRecord:
    """One time-stamped row of tracked norms and invariant drifts."""

    t: float
    linf: float
    l6: float
    l14: float
    h2: float
    mass: float
    energy: float
    mass_rel_err: float
    energy_rel_err: float
    besov: float | None = None

    CSV_COLUMNS = ("t", "linf", "l6", "l14", "h2", "mass", "energy",
                   "mass_rel_err", "energy_rel_err", "besov")

    def csv_row(self) -> str:
        vals = [self.t, self.linf, self.l6, self.l14, self.h2, self.mass,
                self.energy, self.mass_rel_err, self.energy_rel_err]
        cells = [repr(float(v)) for v in vals]
        cells.append("" if self.besov is None else repr(float(self.besov)))
        return ",".join(cells)


class IntegralResult(NamedTuple):
    value: float
    method_used: str
    fell_back: bool


class NormAtRadius(NamedTuple):
    value: float
    radius: float


def radial_integral(samples: np.ndarray, grid: RadialGrid,
                    method: str = "simpson") -> IntegralResult:
    """Approximate the 1-d integral of the samples over [0, r_max].

    Simpson needs an even interval count; odd n falls back to the
    trapezoid rule with a warning flag in the result.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (grid.n + 1,):
        raise ConfigurationError(
            f"samples must have length n+1 = {grid.n + 1}, got {samples.shape}"
        )
    if method not in ("simpson", "trapezoid"):
        raise ConfigurationError(f"unknown quadrature method {method!r}")
    fell_back = False
    if method == "simpson" and grid.n % 2 != 0:
        method = "trapezoid"
        fell_back = True
    if method == "simpson":
        value = float(simpson(samples, dx=grid.h))
    else:
        value = float(np.trapezoid(samples, dx=grid.h))
    return IntegralResult(value, method, fell_back)


def _weight(grid: RadialGrid) -> np.ndarray:
    return grid.nodes ** (grid.dim - 1)


def mass(field: FieldState) -> float:
    """Integral of |U|^2 r^(d-1)."""
    u = field.u
    density = (u.real * u.real + u.imag * u.imag) * _weight(field.grid)
    return radial_integral(density, field.grid).value


def energy(field: FieldState, p: int = 5, convention: str = "discrete") -> float:
    """Energy functional with the discrete Laplacian kinetic proxy.

    convention="discrete" uses the 2/(p+1) potential prefactor of the
    discrete density; "continuum" uses 1/(p+1).  Only relative drift is
    ever reported, so either is self-consistent.
    """
    if convention not in ("discrete", "continuum"):
        raise ConfigurationError(f"unknown energy convention {convention!r}")
    u = field.u
    lap = apply_laplacian(field)
    kinetic = -(u.real * lap.real + u.imag * lap.imag)
    a2 = u.real * u.real + u.imag * u.imag
    prefactor = 2.0 / (p + 1) if convention == "discrete" else 1.0 / (p + 1)
    potential = prefactor * a2 ** ((p + 1) // 2)
    density = (kinetic + potential) * _weight(field.grid)
    return radial_integral(density, field.grid).value


def lp_norm(field: FieldState, p: float) -> float:
    """(integral |U|^p r^(d-1) dr)^(1/p)."""
    absu = np.abs(field.u)
    density = absu ** p * _weight(field.grid)
    return radial_integral(density, field.grid).value ** (1.0 / p)


def linf_norm(field: FieldState) -> NormAtRadius:
    """Grid maximum of |U| and the radius where it is attained."""
    absu = np.abs(field.u)
    j = int(np.argmax(absu))
    return NormAtRadius(float(absu[j]), j * field.grid.h)


def h2_seminorm(field: FieldState, order: int = 4) -> float:
    """sqrt(integral |Delta_disc U|^2 r^(d-1) dr)."""
    lap = apply_laplacian(field, order=order)
    density = (lap.real * lap.real + lap.imag * lap.imag) * _weight(field.grid)
    return np.sqrt(radial_integral(density, field.grid).value)


def diagnostics(field: FieldState, p: int = 5,
                mass0: float | None = None,
                energy0: float | None = None) -> DiagnosticsRecord:
    """Full diagnostics row; drifts are relative to the supplied t=0 values."""
    m = mass(field)
    e = energy(field, p=p)

    def rel(q, q0):
        if q0 is None:
            return 0.0
        if q0 == 0.0:
            return 0.0 if q == 0.0 else np.inf
        return abs(q - q0) / abs(q0)

    return DiagnosticsRecord(
        t=field.t,
        linf=linf_norm(field).value,
        l6=lp_norm(field, 6),
        l14=lp_norm(field, 14),
        h2=h2_seminorm(field),
        mass=m,
        energy=e,
        mass_rel_err=rel(m, mass0),
        energy_rel_err=rel(e, energy0),
    )
