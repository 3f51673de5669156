"""Radial mesh, discrete field state, ghost extension, and initial data.

The mesh is uniform: nodes r_j = j*h for j = 0..n with h = r_max/n.  The
field carries a Dirichlet wall at r_n (u identically zero there) and a
symmetry condition at the origin realized through even-reflection ghost
nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigurationError, UnknownInitialConditionError

IC_FAMILIES = ("gaussian", "ring", "oscillatory_gaussian", "custom_table")


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial mesh on [0, r_max] with n intervals (n+1 nodes)."""

    r_max: float
    n: int
    dim: int = 5

    @property
    def h(self) -> float:
        return self.r_max / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.h


def build_grid(r_max: float, n: int, dim: int = 5) -> RadialGrid:
    """Validate parameters and construct the mesh.

    Raises ConfigurationError naming the offending field for non-positive
    r_max, too few intervals, or an even/too-small dimension.
    """
    if not r_max > 0:
        raise ConfigurationError(f"r_max must be positive, got {r_max}")
    if n < 8:
        raise ConfigurationError(f"n must be at least 8 (stencil needs interior room), got {n}")
    if dim < 3 or dim % 2 == 0:
        raise ConfigurationError(f"dim must be odd and >= 3, got {dim}")
    return RadialGrid(r_max=float(r_max), n=int(n), dim=int(dim))


@dataclass
class FieldState:
    """Complex samples U_j = u(r_j, t) on a RadialGrid."""

    grid: RadialGrid
    t: float
    u: np.ndarray

    def __post_init__(self):
        self.u = np.ascontiguousarray(self.u, dtype=np.complex128)
        if self.u.shape != (self.grid.n + 1,):
            raise ConfigurationError(
                f"u must have length n+1 = {self.grid.n + 1}, got {self.u.shape}"
            )

    def copy(self) -> "FieldState":
        return FieldState(self.grid, self.t, self.u.copy())

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.u.view(np.float64))))


@dataclass(frozen=True)
class InitialCondition:
    """Closed-form initial-data family.

    amplitude is the prefactor A; alpha is the quadratic chirp rate used
    only by the oscillatory_gaussian family (phase e^{-i*alpha*r^2},
    alpha > 0 focuses toward the origin).  custom_table takes explicit
    samples of length n+1.
    """

    family: str
    amplitude: float = 1.0
    alpha: float = 0.0
    table: np.ndarray | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in IC_FAMILIES:
            raise UnknownInitialConditionError(
                f"unknown initial-condition family {self.family!r}; "
                f"expected one of {IC_FAMILIES}"
            )
        if self.family != "custom_table" and not self.amplitude > 0:
            raise ConfigurationError(f"amplitude must be positive, got {self.amplitude}")
        if self.family == "custom_table" and self.table is None:
            raise ConfigurationError("custom_table family requires a table of samples")


def init_field(grid: RadialGrid, ic: InitialCondition) -> FieldState:
    """Sample the initial condition on the mesh at t = 0 (wall node forced to 0)."""
    r = grid.nodes
    if ic.family == "gaussian":
        u = ic.amplitude * np.exp(-r * r)
    elif ic.family == "ring":
        u = ic.amplitude * r * r * np.exp(-r * r)
    elif ic.family == "oscillatory_gaussian":
        u = ic.amplitude * np.exp(-1j * ic.alpha * r * r) * np.exp(-r * r)
    else:  # custom_table
        table = np.asarray(ic.table, dtype=np.complex128)
        if table.shape != (grid.n + 1,):
            raise ConfigurationError(
                f"custom_table samples must have length n+1 = {grid.n + 1}, got {table.shape}"
            )
        u = table.copy()
    u = u.astype(np.complex128)
    u[grid.n] = 0.0
    return FieldState(grid=grid, t=0.0, u=u)


def extend_with_ghosts(field: FieldState) -> np.ndarray:
    """Ghost-extended sample array of length n+5.

    Layout: [U_2, U_1, U_0, ..., U_n, 0, 0] -- even reflection about the
    origin (U_{-1}=U_1, U_{-2}=U_2) and zero padding past the wall
    (U_{n+1}=U_{n+2}=0).  Pure function; the field is untouched.
    """
    u = field.u
    n = field.grid.n
    ext = np.zeros(n + 5, dtype=np.complex128)
    ext[0] = u[2]
    ext[1] = u[1]
    ext[2:n + 3] = u
    return ext
