"""Tests for the transport-equation integrator.

Two closed-form solutions serve as oracles. Derivatives of ``T_n`` are
Gegenbauer polynomials with limiting zero density
``sqrt(1 - t^2 - x^2) / (pi (1 - x^2))``. Derivatives of ``H_n`` (scaled by
``1/sqrt(2n)``) give the shrinking semicircle ``(2/pi) sqrt(1 - t - x^2)``.
Both carry mass ``1 - t``.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finite_hilbert import catalog
from finite_hilbert.errors import InstabilityError, ResolutionError
from finite_hilbert.flow import (
    DensityProfile,
    arcsine_drift,
    arcsine_profile,
    cell_centers,
    chebyshev_exact_density,
    compare_to_empirical,
    empirical_roots,
    evolve,
    flux,
    hermite_exact_density,
    hilbert_of_density,
    profile_from_density,
    semicircle_profile,
    step,
    sweep,
    trajectory,
)
from finite_hilbert.roots import arcsine_cdf, ks_statistic, semicircle_cdf
from finite_hilbert.transform import fht_quadrature_oracle


@pytest.fixture(scope="module")
def arcsine():
    return arcsine_profile()


@pytest.fixture(scope="module")
def semicircle():
    return semicircle_profile()


class TestProfile:
    def test_exact_initial_mass(self, arcsine, semicircle):
        assert arcsine.mass == pytest.approx(1.0, abs=1e-14)
        assert semicircle.mass == pytest.approx(1.0, abs=1e-14)

    def test_arcsine_cdf_is_exact(self, arcsine):
        x = np.linspace(-1, 1, 2001)
        np.testing.assert_allclose(arcsine.cdf(x), arcsine_cdf(x), atol=1e-14)

    def test_semicircle_cdf_matches_at_edges(self, semicircle):
        e = semicircle.edges
        np.testing.assert_allclose(semicircle.cdf(e), semicircle_cdf(e), atol=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            DensityProfile(np.array([1.0, -1.0, 1.0, 1.0]))
        with pytest.raises(ValueError):
            DensityProfile(np.ones(8), t=1.0)

    def test_support_of_narrow_profile(self):
        d = semicircle_profile(radius=0.5)
        i0, i1 = d.support()
        assert d.edges[i0] == pytest.approx(-0.5, abs=d.dx)
        assert d.edges[i1] == pytest.approx(0.5, abs=d.dx)

    def test_empty_support(self):
        with pytest.raises(InstabilityError, match="no support"):
            DensityProfile(np.zeros(16)).support()


class TestHilbert:
    def test_arcsine_is_annihilated(self, arcsine):
        assert np.max(np.abs(hilbert_of_density(arcsine))) <= 1e-12

    def test_semicircle(self, semicircle):
        x = semicircle.grid
        inner = np.abs(x) <= 0.9
        hu = hilbert_of_density(semicircle)
        # independent route: principal-value quadrature of the density itself
        sample = x[inner][::16]
        oracle = fht_quadrature_oracle(catalog.semicircle(), sample)
        np.testing.assert_allclose(oracle, 2 * sample / np.pi, atol=1e-12)
        assert np.max(np.abs(hu[inner] - 2 * x[inner] / np.pi)) <= 5e-4

    def test_off_support_closed_form(self):
        d = semicircle_profile(radius=0.5)
        x = d.grid
        out = np.abs(x) > 0.55
        exact = (8 / np.pi) * (x - np.sign(x) * np.sqrt(np.maximum(x * x - 0.25, 0)))
        assert np.max(np.abs(hilbert_of_density(d)[out] - exact[out])) <= 2e-3

    @settings(max_examples=15, deadline=None)
    @given(width=st.floats(1.0, 8.0), height=st.floats(0.1, 10))
    def test_even_to_odd(self, width, height):
        x = cell_centers(256)
        d = DensityProfile(height * np.exp(-width * x * x))
        hu = hilbert_of_density(d)
        assert np.max(np.abs(hu + hu[::-1])) <= 1e-12 * max(1.0, np.max(np.abs(hu)))

    def test_oscillatory_resampling_rejected(self):
        noise = np.random.default_rng(0).uniform(0, 1, 512)
        with pytest.raises(ResolutionError, match="oscillatory"):
            hilbert_of_density(DensityProfile(noise))


class TestFlux:
    def test_arcsine_interior_zero(self, arcsine):
        F = flux(arcsine)
        assert np.max(np.abs(F[1:-1])) <= 1e-12
        assert F[0] == -0.5 and F[-1] == 0.5

    def test_semicircle_is_arcsin(self, semicircle):
        F = flux(semicircle)
        e = semicircle.edges
        inner = np.abs(e) <= 0.9
        assert np.max(np.abs(F - np.arcsin(e) / np.pi)[inner]) <= 1e-4

    def test_saturates_off_support(self):
        d = semicircle_profile(radius=0.5)
        F = flux(d)
        e = d.edges
        assert np.all(F[e < -0.51] == -0.5) and np.all(F[e > 0.51] == 0.5)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.floats(0, 100), min_size=8, max_size=8), st.floats(0.5, 8))
    def test_bounded(self, amps, spread):
        # smooth nonnegative mixtures of bumps
        x = cell_centers(128)
        centres = np.linspace(-0.6, 0.6, 8)
        u = sum(a * np.exp(-spread * 10 * (x - c) ** 2) for a, c in zip(amps, centres))
        if not np.any(u > 0):
            return
        assert np.all(np.abs(flux(DensityProfile(u))) <= 0.5)

    def test_eps_must_be_positive(self, arcsine):
        with pytest.raises(ValueError):
            flux(arcsine, eps=0.0)


class TestStep:
    def test_cfl_guard(self, arcsine):
        with pytest.raises(ValueError, match="dt"):
            step(arcsine, dt=0.01)

    def test_single_step_mass(self, arcsine):
        d = step(arcsine)
        assert arcsine.mass - d.mass == pytest.approx(1e-3, rel=1e-9)
        assert d.t == pytest.approx(1e-3)

    def test_even_data_stays_even(self, semicircle):
        for d in trajectory(semicircle, 0.05):
            assert np.max(np.abs(d.u - d.u[::-1])) <= 1e-10

    def test_non_finite_raises(self, monkeypatch, arcsine):
        import finite_hilbert.flow as flow

        monkeypatch.setattr(flow, "flux", lambda d, eps=None: np.full(d.m + 1, np.nan))
        with pytest.raises(InstabilityError, match="non-finite"):
            flow.step(arcsine)

    def test_clipping_is_counted(self):
        # a lone spike empties within a step and undershoots
        u = np.zeros(64)
        u[32] = 1e-3
        d = step(DensityProfile(u), dt=0.02)
        assert d.clipped > 0 and np.all(d.u >= 0)

    @pytest.mark.parametrize("make", [arcsine_profile, semicircle_profile])
    def test_mass_decays_at_unit_rate(self, make):
        d = make()
        for d in trajectory(d, 0.5, every=100):
            assert abs(d.mass - (1 - d.t)) <= 0.02


class TestExactSolutions:
    def test_chebyshev_profile(self, arcsine):
        d = evolve(arcsine, 0.1)
        x = d.grid
        inner = np.abs(x) <= 0.9
        exact = chebyshev_exact_density(0.1, x)
        assert np.max(np.abs(d.u[inner] / exact[inner] - 1)) <= 0.005

    def test_semicircle_shrinks(self, semicircle):
        d = evolve(semicircle, 0.5)
        x = d.grid
        inner = np.abs(x) <= 0.6
        exact = hermite_exact_density(0.5, x)
        assert np.max(np.abs(d.u - exact)[inner]) <= 0.01
        assert np.all(d.u[np.abs(x) > np.sqrt(0.5) + 0.02] < 1e-3)

    def test_arcsine_stationarity(self, arcsine):
        # drift of the arcsine profile over 100 steps, |x| <= 0.9, 1% budget.
        # The true solution itself moves ~2.7% there (see test_chebyshev_profile).
        assert arcsine_drift(0.1) <= 0.01

    def test_refinement_reduces_drift(self):
        coarse = arcsine_drift(0.1, m=512, dt=1e-3)
        fine = arcsine_drift(0.1, m=1024, dt=5e-4)
        assert coarse / fine >= 1.5


class TestEmpirical:
    def test_chebyshev_half(self):
        assert compare_to_empirical("chebyshev", 0.5, 400) <= 0.05

    def test_hermite_half(self):
        assert compare_to_empirical("hermite", 0.5, 200) <= 0.08

    def test_zero_time_limit(self):
        # no steps and no derivatives: only the root discretization is left
        assert compare_to_empirical("chebyshev", 1e-4, 100) == pytest.approx(1 / 200, abs=1e-12)
        assert compare_to_empirical("chebyshev", 1e-3, 100) == pytest.approx(1 / 200, abs=1e-3)

    def test_other_weights_share_the_arcsine_start(self):
        assert compare_to_empirical("legendre", 0.3, 200) <= 0.05
        assert compare_to_empirical("jacobi", 0.3, 200, a=0.5, b=-0.3) <= 0.05

    def test_empirical_roots_count(self):
        assert empirical_roots("chebyshev", 0.5, 100).degree == 50
        assert empirical_roots("hermite", 0.25, 40).degree == 30

    def test_sweep_order(self):
        ts = [0.2, 0.1]
        assert sweep("chebyshev", ts, 60, workers=2) == sweep("chebyshev", ts, 60)

    def test_bad_time(self):
        with pytest.raises(ValueError):
            compare_to_empirical("chebyshev", 0.0, 10)

    def test_profile_from_density(self):
        d = profile_from_density(lambda x: hermite_exact_density(0.0, x), 256)
        assert d.mass == pytest.approx(1.0, abs=1e-3)
        assert ks_statistic(np.linspace(-0.999, 0.999, 5), d.cdf) > 0


class TestTrajectoryGuard:
    def test_dt_checked_before_rounding(self, arcsine):
        # a too-large dt must not silently round to zero steps
        with pytest.raises(ValueError, match="dt"):
            evolve(arcsine, 0.1, dt=0.5)
