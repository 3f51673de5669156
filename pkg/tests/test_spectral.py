import numpy as np
import pytest
from scipy.special import jv

from radnls import (FieldState, InitialCondition, Spectrum,
                    UnsupportedDimensionError, besov_norm, bessel_kernel,
                    build_grid, dyadic_bins, init_field, transform)


class TestBesselKernel:
    def test_closed_form_values(self):
        # J_{3/2}(pi) = sqrt(2/pi^2) * (0 - (-1)) = sqrt(2)/pi
        assert bessel_kernel(1.5, np.pi) == pytest.approx(np.sqrt(2.0) / np.pi, rel=1e-14)
        # J_{1/2}(pi/2) = sqrt(2/(pi * pi/2)) * 1 = 2/pi
        assert bessel_kernel(0.5, np.pi / 2) == pytest.approx(2.0 / np.pi, rel=1e-14)

    @pytest.mark.parametrize("nu", [0.5, 1.5, 2.5, 3.5])
    def test_against_scipy(self, nu):
        x = np.concatenate([np.linspace(1e-6, 0.009, 40),
                            np.linspace(0.011, 60.0, 400)])
        ours = bessel_kernel(nu, x)
        ref = jv(nu, x)
        # rtol blows up at the function's zero crossings; abs floor covers those
        np.testing.assert_allclose(ours, ref, rtol=1e-11, atol=1e-13)

    def test_small_argument_series_accuracy(self):
        # cancellation region: closed form would lose all digits near zero
        x = np.geomspace(1e-8, 9e-3, 50)
        ours = bessel_kernel(1.5, x)
        ref = jv(1.5, x)
        np.testing.assert_allclose(ours, ref, rtol=1e-12)

    def test_limit_at_zero(self):
        assert bessel_kernel(1.5, 0.0) == 0.0

    def test_integer_order_rejected(self):
        with pytest.raises(UnsupportedDimensionError):
            bessel_kernel(2.0, 1.0)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_kernel(1.5, -1.0)


def gaussian_spectrum(n=10000, r_max=100.0, amplitude=10.0):
    g = build_grid(r_max, n)
    f = init_field(g, InitialCondition("gaussian", amplitude))
    return transform(f)


class TestTransform:
    def test_zero_field(self):
        g = build_grid(1.0, 16)
        f = FieldState(g, 0.0, np.zeros(17, dtype=complex))
        spec = transform(f)
        assert np.all(spec.uhat == 0.0)
        assert spec.dk == pytest.approx(0.5)
        assert spec.k_max == pytest.approx(8.0)

    def test_spectral_mesh_metadata(self):
        spec = gaussian_spectrum(n=1000, r_max=10.0)
        assert spec.dk == pytest.approx(0.05)
        assert spec.k_max == pytest.approx(50.0)
        assert spec.k_max == pytest.approx(spec.n * spec.dk)
        assert len(spec.uhat) == 1001

    def test_gaussian_analytic(self):
        # unitary-convention transform of 10 e^{-r^2} in d=5: 10 * 2^{-5/2} e^{-k^2/4}
        spec = gaussian_spectrum()
        k = spec.k
        analytic = 10.0 * 2.0 ** -2.5 * np.exp(-k * k / 4.0)
        assert spec.uhat[0].real == pytest.approx(1.76777, rel=1e-5)
        mask = k <= spec.k_max / 4.0
        err = np.max(np.abs(np.abs(spec.uhat[mask]) - analytic[mask])) / analytic[0]
        assert err <= 1e-3  # observed ~1e-12; quadrature guard

    def test_linearity(self):
        g = build_grid(4.0, 64)
        rng = np.random.default_rng(7)
        u = rng.normal(size=(2, 65)) + 1j * rng.normal(size=(2, 65))
        u[:, -1] = 0.0
        fa = FieldState(g, 0.0, u[0])
        fb = FieldState(g, 0.0, u[1])
        fab = FieldState(g, 0.0, 2.0 * u[0] - 0.5j * u[1])
        combo = 2.0 * transform(fa).uhat - 0.5j * transform(fb).uhat
        np.testing.assert_allclose(transform(fab).uhat, combo, rtol=1e-10, atol=1e-12)

    def test_even_dimension_rejected(self):
        from radnls import RadialGrid
        g = RadialGrid(r_max=1.0, n=16, dim=6)
        f = FieldState(g, 0.0, np.zeros(17, dtype=complex))
        with pytest.raises(UnsupportedDimensionError):
            transform(f)


class TestDyadicBins:
    def test_bin_indices_formula(self):
        # R=100, n=10000: dk = 0.005, k1 = 0.005 -> j_min = -5; K_max = 50 -> j_max = 5
        spec = Spectrum(dk=0.005, k_max=50.0, uhat=np.zeros(10001, dtype=complex),
                        dim=5, t=0.0)
        bins = dyadic_bins(spec)
        assert bins.j_min == -5
        assert bins.j_max == 5

    def test_zero_spectrum(self):
        spec = Spectrum(dk=0.005, k_max=50.0, uhat=np.zeros(10001, dtype=complex),
                        dim=5, t=0.0)
        bins = dyadic_bins(spec)
        assert all(q == 0.0 for q in bins.q.values())
        assert float(besov_norm(spec)) == 0.0
        assert besov_norm(spec).argmax_bin is None

    def test_indicator_annulus(self):
        k = np.arange(10001) * 0.005
        uhat = ((k >= 1.0) & (k < 2.0)).astype(complex)
        spec = Spectrum(dk=0.005, k_max=50.0, uhat=uhat, dim=5, t=0.0)
        bins = dyadic_bins(spec)
        assert bins.q[0] == pytest.approx(1.0, abs=0.01)
        assert bins.q[1] < 0.05  # only edge leakage
        result = besov_norm(spec)
        assert result.argmax_bin == 0
        assert float(result) == pytest.approx(1.0, abs=0.01)

    def test_scaling(self):
        spec = gaussian_spectrum(n=1000, r_max=10.0)
        doubled = Spectrum(dk=spec.dk, k_max=spec.k_max, uhat=3.0 * spec.uhat,
                           dim=spec.dim, t=spec.t)
        assert float(besov_norm(doubled)) == pytest.approx(3.0 * float(besov_norm(spec)),
                                                           rel=1e-12)

    def test_weighted_variant_differs(self):
        spec = gaussian_spectrum(n=1000, r_max=10.0)
        flat = float(besov_norm(spec))
        weighted = float(besov_norm(spec, weighted=True))
        assert weighted > 0 and weighted != pytest.approx(flat, rel=1e-3)

    def test_bins_cover_index_range(self):
        spec = Spectrum(dk=0.5, k_max=8.0, uhat=np.ones(17, dtype=complex), dim=5, t=0.0)
        bins = dyadic_bins(spec)
        assert bins.j_min == 1
        assert bins.j_max == 3
        assert set(bins.q) | set(bins.skipped) == set(range(bins.j_min - 1, bins.j_max + 1))
