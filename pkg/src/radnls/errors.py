"""Exception hierarchy shared across the package."""


class RadnlsError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(RadnlsError, ValueError):
    """A configuration value is invalid; the message names the offending field."""


class UnknownInitialConditionError(ConfigurationError):
    """Requested initial-condition family does not exist."""


class OutputDirectoryError(ConfigurationError):
    """Output directory missing or not writable."""


class UnsupportedDimensionError(RadnlsError, ValueError):
    """Even spatial dimension: the closed-form Bessel kernel needs half-integer order."""


class InstabilityError(RadnlsError, RuntimeError):
    """The time integration produced NaN/Inf amplitudes.

    Attributes:
        t: time at which the bad step started.
        max_abs: largest |U| before the failing step.
        last_record: last successfully computed diagnostics row, if any.
    """

    def __init__(self, t, max_abs, last_record=None):
        super().__init__(
            f"non-finite field detected at t={t:.6g} (max |U| before step: {max_abs:.6g})"
        )
        self.t = t
        self.max_abs = max_abs
        self.last_record = last_record


class FitError(RadnlsError, ValueError):
    """Decay-rate fit rejected (too few points or non-positive data)."""
