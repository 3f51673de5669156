"""Radial Fourier transform by Bessel-kernel quadrature and the dyadic Besov estimate.

The transform uhat(k) = k^(-nu) * integral u(r) J_nu(kr) r^(d/2) dr
(nu = (d-2)/2) is evaluated with the plain trapezoid rule on the radial
mesh, at wavenumbers k_j = j*dk with dk = 1/(2*r_max); the k=0 column uses
the separate moment formula.  Cost is O(n^2): compute it at snapshot times,
never per step.  Odd dimensions only, so the kernel order is half-integer
and elementary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from .errors import UnsupportedDimensionError
from .grid import FieldState

SMALL_X = 1e-2  # below this the closed form cancels; switch to the series


@dataclass
class Spectrum:
    """Sampled radial Fourier transform uhat(k_j), k_j = j*dk, j = 0..n."""

    dk: float
    k_max: float
    uhat: np.ndarray
    dim: int
    t: float

    @property
    def n(self) -> int:
        return len(self.uhat) - 1

    @property
    def k(self) -> np.ndarray:
        return np.arange(len(self.uhat)) * self.dk


@dataclass
class BesovBins:
    """Dyadic-annulus L2 masses q_j of the spectrum.

    Bin j covers [2^j, 2^(j+1)) for j_min <= j <= j_max-1; bin j_min-1
    covers [0, 2^j_min) and bin j_max covers [2^j_max, k_max].  Bins with
    fewer than two spectral samples are skipped and listed in `skipped`.
    """

    j_min: int
    j_max: int
    q: dict[int, float]
    skipped: list[int] = dc_field(default_factory=list)


class BesovResult(float):
    """Besov norm value; carries the argmax dyadic bin index."""

    def __new__(cls, value: float, argmax_bin: int | None):
        obj = super().__new__(cls, value)
        obj.argmax_bin = argmax_bin
        return obj


def _half_integer_m(nu: float) -> int:
    m = nu - 0.5
    if m < 0 or abs(m - round(m)) > 1e-12:
        raise UnsupportedDimensionError(
            f"Bessel order must be a non-negative half-integer (odd dimension), got nu={nu}"
        )
    return int(round(m))


def bessel_kernel(nu: float, x) -> np.ndarray | float:
    """J_nu(x) for half-integer nu >= 1/2, by the closed elementary form.

    Uses the spherical-Bessel recurrence above SMALL_X and a truncated
    Taylor series below it (the sin/cos combination loses all digits near
    zero: sin x/x - cos x ~ x^2/3).
    """
    m = _half_integer_m(nu)
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    if np.any(x_arr < 0):
        raise ValueError("bessel_kernel requires x >= 0")
    out = np.empty_like(x_arr)

    # the recurrence also cancels when x is small relative to the order,
    # so the series threshold grows with m
    small = x_arr < max(SMALL_X, 0.6 * m)
    if np.any(small):
        xs = x_arr[small]
        dfac = math.prod(range(1, 2 * m + 2, 2))
        y = 0.5 * xs * xs
        series = np.ones_like(xs)
        term = np.ones_like(xs)
        for i in range(40):
            term *= -y / ((i + 1.0) * (2 * m + 3 + 2 * i))
            series += term
            if np.max(np.abs(term)) < 1e-17:
                break
        jm = xs ** m / dfac * series
        out[small] = np.sqrt(2.0 * xs / np.pi) * jm

    big = ~small
    if np.any(big):
        xb = x_arr[big]
        with np.errstate(divide="ignore", invalid="ignore"):
            j_prev = np.sin(xb) / xb
            if m == 0:
                jm = j_prev
            else:
                jm = (j_prev - np.cos(xb)) / xb
                for i in range(1, m):
                    jm, j_prev = (2 * i + 1) / xb * jm - j_prev, jm
        out[big] = np.sqrt(2.0 * xb / np.pi) * jm

    return float(out[0]) if scalar else out


def transform(field: FieldState) -> Spectrum:
    """Radial Fourier transform of the field on the spectral mesh.

    k_j = j*dk, dk = 1/(2*r_max), j = 0..n; Nyquist k_max = n*dk.
    """
    grid = field.grid
    d = grid.dim
    if d % 2 == 0:
        raise UnsupportedDimensionError(f"even dimension d={d} unsupported")
    nu = (d - 2) / 2.0
    m = _half_integer_m(nu)
    n, h = grid.n, grid.h
    dk = 1.0 / (2.0 * grid.r_max)
    r = grid.nodes

    # trapezoid weights folded into the integrand samples
    w = field.u * r ** (d / 2.0) * h
    w[0] *= 0.5
    w[n] *= 0.5

    out_re = np.zeros(n + 1)
    out_im = np.zeros(n + 1)
    _kernels.hankel_rows(np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag),
                         n, h, dk, m, max(SMALL_X, 0.6 * m), out_re, out_im)

    # k = 0 column: moment formula
    w0 = field.u * r ** (nu + d / 2.0)
    w0[0] *= 0.5
    w0[n] *= 0.5
    c0 = np.sum(w0) * h / (2.0 ** nu * math.gamma(1.0 + nu))
    out_re[0] = c0.real
    out_im[0] = c0.imag

    return Spectrum(dk=dk, k_max=n * dk, uhat=out_re + 1j * out_im, dim=d, t=field.t)


def dyadic_bins(spectrum: Spectrum, weighted: bool = False) -> BesovBins:
    """Per-annulus L2 masses of |uhat| on the dyadic frequency decomposition.

    The quadrature measure is the one-dimensional dk; weighted=True applies
    the k^(d-1) surface weight instead (exposed for exploration, no
    reference baseline).
    """
    k = spectrum.k
    dk = spectrum.dk
    density = np.abs(spectrum.uhat) ** 2
    if weighted:
        density = density * k ** (spectrum.dim - 1)

    k1 = dk
    kn = spectrum.k_max
    j_min = math.ceil(math.log2(4.0 * k1))
    j_max = math.floor(math.log2(kn))

    edge_tol = 1e-12 * kn
    q: dict[int, float] = {}
    skipped: list[int] = []

    def integrate(lo, hi, j):
        mask = (k >= lo - edge_tol) & (k <= hi + edge_tol)
        if np.count_nonzero(mask) < 2:
            skipped.append(j)
            return
        q[j] = float(np.sqrt(np.trapezoid(density[mask], k[mask])))

    integrate(0.0, 2.0 ** j_min, j_min - 1)
    for j in range(j_min, j_max):
        integrate(2.0 ** j, 2.0 ** (j + 1), j)
    integrate(2.0 ** j_max, kn, j_max)
    return BesovBins(j_min=j_min, j_max=j_max, q=q, skipped=skipped)


def besov_norm(spectrum: Spectrum, bins: BesovBins | None = None,
               weighted: bool = False) -> BesovResult:
    """max over dyadic bins of 2^(2j) q_j; carries the argmax bin index."""
    if bins is None:
        bins = dyadic_bins(spectrum, weighted=weighted)
    best = 0.0
    best_j = None
    for j, qj in bins.q.items():
        val = 4.0 ** j * qj
        if val > best:
            best = val
            best_j = j
    return BesovResult(best, best_j)
