"""Tests for grids, T/U analysis, synthesis and weighted quadrature."""

import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as npcheb

from finite_hilbert.chebyshev import (
    Basis,
    ChebSeries,
    GridFunction,
    Weight,
    analyze_T,
    analyze_T_direct,
    analyze_U,
    cheb_nodes,
    check_resolution,
    gauss_cheb_quad,
    synth,
    synth_grid,
    tail_mass,
    weighted_norm_sq,
)
from finite_hilbert.errors import DomainError, UnderResolvedWarning


def _tk(k):
    return lambda x: np.cos(k * np.arccos(np.clip(x, -1, 1)))


class TestChebNodes:
    def test_single_node_is_origin(self):
        assert cheb_nodes(1) == pytest.approx([0.0], abs=1e-16)

    def test_two_nodes(self):
        np.testing.assert_allclose(cheb_nodes(2), [np.sqrt(2) / 2, -np.sqrt(2) / 2], atol=1e-16)

    def test_nodes_are_roots_of_t64(self):
        coeffs = np.zeros(65)
        coeffs[64] = 1.0
        vals = synth(ChebSeries(coeffs), cheb_nodes(64))
        assert np.max(np.abs(vals)) <= 1e-13

    def test_interior_only(self):
        x = cheb_nodes(513)
        assert np.all(np.abs(x) < 1)

    def test_read_only(self):
        with pytest.raises(ValueError):
            cheb_nodes(8)[0] = 2.0

    def test_invalid_n(self):
        with pytest.raises(ValueError, match="n must be >= 1"):
            cheb_nodes(0)


class TestAnalyzeT:
    def test_t3_on_eight_points(self):
        a = analyze_T(GridFunction.sample(_tk(3), 8)).coeffs
        expected = np.zeros(8)
        expected[3] = 1
        np.testing.assert_allclose(a, expected, atol=1e-15)

    def test_constant(self):
        a = analyze_T(GridFunction(np.ones(16))).coeffs
        assert a[0] == pytest.approx(1.0, abs=1e-15)
        assert np.max(np.abs(a[1:])) <= 1e-15

    def test_x5_matches_monomial_conversion(self):
        # frozen values: x^5 = (10 T_1 + 5 T_3 + T_5) / 16
        frozen = np.array([0, 10, 0, 5, 0, 1]) / 16
        oracle = npcheb.poly2cheb([0, 0, 0, 0, 0, 1])
        np.testing.assert_allclose(oracle, frozen, atol=1e-16)
        a = analyze_T(GridFunction.sample(lambda x: x**5, 16)).coeffs
        np.testing.assert_allclose(a[:6], frozen, atol=1e-15)
        assert np.max(np.abs(a[6:])) <= 1e-15

    def test_dct_agrees_with_direct_sum(self):
        v = np.random.default_rng(3).standard_normal(97)
        np.testing.assert_allclose(analyze_T(v).coeffs, analyze_T_direct(v).coeffs, atol=1e-13)

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 300), data=st.data())
    def test_discrete_orthogonality(self, n, data):
        k = data.draw(st.integers(0, n - 1))
        a = analyze_T(GridFunction.sample(_tk(k), n)).coeffs.copy()
        a[k] -= 1.0
        assert np.max(np.abs(a)) <= 1e-13


class TestSynth:
    def test_u0_is_one(self):
        s = ChebSeries([1.0], Basis.SECOND)
        np.testing.assert_allclose(synth(s, np.linspace(-1, 1, 7)), 1.0)

    def test_u1_at_point_three(self):
        assert synth(ChebSeries([0.0, 1.0, 0.0], Basis.SECOND), 0.3) == pytest.approx(0.6, abs=1e-15)

    def test_t2_at_half(self):
        assert synth(ChebSeries([0.0, 0.0, 1.0]), 0.5) == pytest.approx(-0.5, abs=1e-15)

    def test_matches_numpy_chebval(self):
        c = np.random.default_rng(0).standard_normal(40)
        x = np.linspace(-1, 1, 101)
        np.testing.assert_allclose(synth(ChebSeries(c), x), npcheb.chebval(x, c), atol=1e-12)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            synth(ChebSeries([1.0, 2.0]), 1.01)

    def test_scalar_in_scalar_out(self):
        assert isinstance(synth(ChebSeries([1.0, 1.0]), 0.25), float)

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(1, 4096), seed=st.integers(0, 2**32 - 1))
    def test_grid_round_trip(self, n, seed):
        v = np.random.default_rng(seed).standard_normal(n)
        back = synth_grid(analyze_T(v), n).values
        assert np.max(np.abs(back - v)) <= 1e-12 * np.max(np.abs(v))

    @pytest.mark.parametrize("n", [1, 7, 64, 1000, 4096])
    def test_pointwise_round_trip_smooth(self, n):
        f = lambda x: np.exp(x) * np.cos(3 * x)
        g = GridFunction.sample(f, n)
        back = synth(analyze_T(g), g.nodes)
        assert np.max(np.abs(back - g.values)) <= 1e-12 * np.max(np.abs(g.values))

    def test_u_round_trip(self):
        v = np.random.default_rng(1).standard_normal(33)
        b = analyze_U(v)
        np.testing.assert_allclose(synth_grid(b, 33).values, v, atol=1e-12)
        np.testing.assert_allclose(synth(b, cheb_nodes(33)), v, atol=1e-12)

    def test_long_series_falls_back(self):
        c = ChebSeries(np.arange(1.0, 20.0))
        np.testing.assert_allclose(synth_grid(c, 8).values, synth(c, cheb_nodes(8)), atol=1e-12)


class TestQuadrature:
    def test_one(self):
        assert gauss_cheb_quad(np.ones(5)) == pytest.approx(np.pi, rel=1e-15)

    def test_x_squared(self):
        assert gauss_cheb_quad(GridFunction.sample(lambda x: x * x, 4)) == pytest.approx(np.pi / 2, rel=1e-14)

    def test_t2_t3_orthogonal(self):
        assert gauss_cheb_quad(GridFunction.sample(lambda x: _tk(2)(x) * _tk(3)(x), 6)) == pytest.approx(0, abs=1e-15)

    @pytest.mark.parametrize("n", [3, 8, 21])
    def test_monomials_exact(self, n):
        g = GridFunction(cheb_nodes(n))
        for m in range(2 * n):
            # int x^m / sqrt(1-x^2) = pi (m-1)!! / m!! for even m
            exact = 0.0 if m % 2 else np.pi * np.prod(np.arange(m - 1, 0, -2) / np.arange(m, 0, -2))
            assert gauss_cheb_quad(g.values**m) == pytest.approx(exact, abs=1e-14)


class TestWeightedNorm:
    def test_one_sqrt(self):
        assert weighted_norm_sq(np.ones(64), Weight.SQRT) == pytest.approx(np.pi / 2, rel=1e-3)

    def test_one_sqrt_resolved(self):
        # the SQRT rule integrates (1 - x^2) p^2 / sqrt(1 - x^2): exact for polynomials
        assert weighted_norm_sq(np.ones(4), Weight.SQRT) == pytest.approx(np.pi / 2, rel=1e-15)

    def test_x_over_weight(self):
        g = GridFunction.sample(lambda x: x / np.sqrt(1 - x * x), 32)
        assert weighted_norm_sq(g, Weight.SQRT) == pytest.approx(np.pi / 2, rel=1e-14)

    def test_one_inv_sqrt(self):
        assert weighted_norm_sq(np.ones(9), Weight.INV_SQRT) == pytest.approx(np.pi, rel=1e-15)

    @settings(max_examples=25, deadline=None)
    @given(a=st.lists(st.floats(-5, 5), min_size=1, max_size=40))
    def test_coefficient_parseval(self, a):
        a = np.array(a)
        n = 64
        h = synth_grid(ChebSeries(a), n).values
        f = h / np.sqrt(1 - cheb_nodes(n) ** 2)
        expected = np.pi * a[0] ** 2 + (np.pi / 2) * np.sum(a[1:] ** 2)
        assert weighted_norm_sq(f, Weight.SQRT) == pytest.approx(expected, rel=1e-12, abs=1e-12)


class TestTailDiagnostic:
    def test_resolved(self):
        a = analyze_T(GridFunction.sample(np.exp, 64))
        assert tail_mass(a) < 1e-14
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            check_resolution(a)

    def test_under_resolved_warns(self):
        a = analyze_T(GridFunction.sample(np.sign, 64))
        with pytest.warns(UnderResolvedWarning):
            assert check_resolution(a) > 1e-8

    def test_zero_series(self):
        assert tail_mass(ChebSeries(np.zeros(10))) == 0.0


class TestGridFunction:
    def test_arithmetic(self):
        a, b = GridFunction([1.0, 2.0]), GridFunction([3.0, 5.0])
        np.testing.assert_array_equal((a + b).values, [4, 7])
        np.testing.assert_array_equal((b - a).values, [2, 3])
        np.testing.assert_array_equal((2 * a).values, [2, 4])

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            GridFunction([1.0, np.nan])

    def test_series_rejects_inf(self):
        with pytest.raises(ValueError):
            ChebSeries([np.inf])
