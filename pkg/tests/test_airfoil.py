"""Tests for the airfoil equation solver."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finite_hilbert.airfoil import AirfoilSolution, airfoil_residual, airfoil_solve
from finite_hilbert.chebyshev import Basis, ChebSeries, GridFunction, cheb_nodes, node_sines
from finite_hilbert.errors import ResolutionError
from finite_hilbert.transform import FhtInput, fht_apply

N = 129


def _u(k, n=N):
    th = np.arccos(cheb_nodes(n))
    return GridFunction(np.sin((k + 1) * th) / node_sines(n))


class TestSolve:
    def test_constant_rhs(self):
        # H[-x / sqrt(1-x^2)] = 1
        sol = airfoil_solve(GridFunction(np.ones(N)))
        x = cheb_nodes(N)
        np.testing.assert_allclose(sol.sample(N).values, -x / np.sqrt(1 - x * x), atol=1e-12)
        assert sol.null_coefficient == 0.0

    def test_homogeneous(self):
        sol = airfoil_solve(GridFunction(np.zeros(N)), c=1.0)
        x = np.array([-0.9, 0.0, 0.4])
        np.testing.assert_allclose(sol(x), 1 / np.sqrt(1 - x * x), rtol=1e-15)

    def test_u2_rhs(self):
        sol = airfoil_solve(_u(2))
        a = sol.series.coeffs
        assert a[3] == pytest.approx(-1.0, abs=1e-14)
        a = a.copy()
        a[3] = 0
        assert np.max(np.abs(a)) <= 1e-14

    def test_under_resolved_rhs(self):
        with pytest.raises(ResolutionError):
            airfoil_solve(GridFunction(np.sign(cheb_nodes(64))))
        sol = airfoil_solve(GridFunction(np.sign(cheb_nodes(64))), strict=False)
        assert isinstance(sol, AirfoilSolution)


class TestResidual:
    def test_round_trip(self):
        g = GridFunction(np.ones(N))
        assert airfoil_residual(airfoil_solve(g), g) <= 1e-10

    def test_perturbation_is_isometric(self):
        g = GridFunction.sample(lambda x: np.exp(x) * np.sin(2 * x), N)
        sol = airfoil_solve(g)
        a = sol.particular.coeffs.copy()
        a[5] += 1e-3
        bumped = AirfoilSolution(ChebSeries(a), 0.0)
        assert airfoil_residual(bumped, g) == pytest.approx(1e-3 * np.sqrt(np.pi / 2), rel=1e-9)

    @pytest.mark.parametrize("c", [-5.0, 0.5, 1e3])
    def test_null_shift_invisible(self, c):
        g = GridFunction.sample(np.cos, N)
        base = airfoil_residual(airfoil_solve(g), g)
        assert airfoil_residual(airfoil_solve(g, c), g) == pytest.approx(base, abs=1e-12 * max(1, abs(c)))

    @settings(max_examples=25, deadline=None)
    @given(delta=st.lists(st.floats(-1e-2, 1e-2), min_size=1, max_size=20))
    def test_residual_isometry_property(self, delta):
        g = GridFunction.sample(np.cos, N)
        sol = airfoil_solve(g)
        a = sol.particular.coeffs.copy()
        d = np.array(delta)
        a[1 : 1 + d.size] += d
        r = airfoil_residual(AirfoilSolution(ChebSeries(a), 0.0), g)
        assert r == pytest.approx(np.sqrt(np.pi / 2) * np.linalg.norm(d), abs=1e-10)


class TestNonUniqueness:
    @settings(max_examples=20, deadline=None)
    @given(c1=st.floats(-100, 100), c2=st.floats(-100, 100))
    def test_one_dimensional(self, c1, c2):
        g = GridFunction.sample(lambda x: x**3 - x, 33)
        s1, s2 = airfoil_solve(g, c1), airfoil_solve(g, c2)
        np.testing.assert_array_equal(s1.particular.coeffs, s2.particular.coeffs)
        assert s1.series.coeffs[0] - s2.series.coeffs[0] == c1 - c2

    @pytest.mark.parametrize("seed", range(5))
    def test_solve_inverts_apply(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal(30) / (1 + np.arange(30)) ** 2
        inp = FhtInput.from_series(ChebSeries(a, Basis.FIRST), 64)
        sol = airfoil_solve(fht_apply(inp), inp.a0)
        np.testing.assert_allclose(sol.series.padded(64).coeffs, inp.g.coeffs, atol=1e-10)
