"""Radial finite-difference simulator and diagnostics for the defocusing
quintic Schroedinger equation in five dimensions."""

from .errors import (ConfigurationError, FitError, InstabilityError,
                     OutputDirectoryError, RadnlsError,
                     UnknownInitialConditionError, UnsupportedDimensionError)
from .grid import (FieldState, InitialCondition, RadialGrid, build_grid,
                   extend_with_ghosts, init_field)
from .harness import (ConvergenceReport, OutputToggles, RunConfig, RunResult,
                      convergence_study, fit_decay_rate,
                      linear_constancy_check, parse_config, run_experiment,
                      snapshot_schedule)
from .norms import (DiagnosticsRecord, diagnostics, energy, h2_seminorm,
                    linf_norm, lp_norm, mass, radial_integral)
from .spectral import (BesovBins, Spectrum, besov_norm, bessel_kernel,
                       dyadic_bins, transform)
from .stencil import EvolutionMode, apply_laplacian, rhs
from .stepper import (EvolutionSinks, RecordingSinks, StepControl, choose_dt,
                      evolve, rk4_step)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
