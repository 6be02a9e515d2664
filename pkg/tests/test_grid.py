import numpy as np
import pytest
from scipy.integrate import quad

from hamswe import (SolitonParams, build_grid, diff1, diff2, integrate,
                    soliton_new)
from conftest import smooth_field


class TestBuildGrid:
    def test_basic(self):
        g = build_grid(8, 8.0, -4.0)
        assert g.dx == 1.0
        assert np.array_equal(g.x, np.arange(-4.0, 4.0))

    def test_dx_exact(self):
        g = build_grid(16, 32.0, -16.0)
        assert g.dx == 2.0
        assert g.n == 16
        assert np.all(np.diff(g.x) == g.dx)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError, match="n too small"):
            build_grid(6, 8.0, 0.0)

    def test_rejects_odd_n(self):
        with pytest.raises(ValueError, match="even"):
            build_grid(9, 8.0, 0.0)

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError, match="length"):
            build_grid(16, 0.0, 0.0)
        with pytest.raises(ValueError, match="length"):
            build_grid(16, -1.0, 0.0)


class TestDiff1:
    def test_annihilates_constants(self, grid):
        assert np.max(np.abs(diff1(np.full(grid.n, 5.0), grid))) <= 1e-13

    def test_sine_converges_order_two(self):
        errs = []
        for n in [64, 128, 256]:
            g = build_grid(n, 10.0, 0.0)
            k = 2 * np.pi / g.length
            err = diff1(np.sin(k * g.x), g) - k * np.cos(k * g.x)
            errs.append(np.max(np.abs(err)))
        for e0, e1 in zip(errs, errs[1:]):
            assert 3.5 <= e0 / e1 <= 4.5

    def test_unit_spike_stencil(self, grid):
        e = np.zeros(grid.n)
        j = 17
        e[j] = 1.0
        d = diff1(e, grid)
        assert d[j - 1] == pytest.approx(1.0 / (2 * grid.dx))
        assert d[j + 1] == pytest.approx(-1.0 / (2 * grid.dx))
        assert d[j] == 0.0
        assert np.count_nonzero(d) == 2

    def test_size_mismatch(self, grid):
        with pytest.raises(ValueError, match="shape"):
            diff1(np.zeros(grid.n + 1), grid)


class TestDiff2:
    def test_annihilates_constants(self, grid):
        assert np.max(np.abs(diff2(np.full(grid.n, 5.0), grid))) <= 1e-13

    def test_discrete_symbol_exact(self):
        g = build_grid(64, 16.0, -8.0)
        k = 2 * np.pi / g.length
        f = np.sin(k * g.x)
        lam = -2.0 * (1.0 - np.cos(k * g.dx)) / g.dx**2
        assert np.max(np.abs(diff2(f, g) - lam * f)) < 1e-12

    def test_linearity(self, grid, rng):
        f = rng.normal(size=grid.n)
        h = rng.normal(size=grid.n)
        lhs = diff2(2.5 * f - 1.25 * h, grid)
        rhs = 2.5 * diff2(f, grid) - 1.25 * diff2(h, grid)
        assert np.max(np.abs(lhs - rhs)) < 1e-11

    def test_convergence_order_two(self):
        errs = []
        for n in [64, 128, 256]:
            g = build_grid(n, 10.0, 0.0)
            f = np.exp(np.sin(2 * np.pi * g.x / g.length))
            w = 2 * np.pi / g.length
            s, c = np.sin(w * g.x), np.cos(w * g.x)
            exact = f * (w**2 * c**2 - w**2 * s)
            errs.append(np.max(np.abs(diff2(f, g) - exact)))
        for e0, e1 in zip(errs, errs[1:]):
            assert 3.5 <= e0 / e1 <= 4.5


class TestIntegrate:
    def test_constant(self):
        g = build_grid(10, 10.0, 0.0)
        assert integrate(np.ones(g.n), g) == pytest.approx(10.0, abs=1e-14)

    def test_full_period_sine(self, grid):
        f = np.sin(2 * np.pi * grid.x / grid.length)
        assert abs(integrate(f, grid)) < 1e-13

    def test_soliton_excess_mass_vs_quadrature_oracle(self):
        # independent oracle: adaptive quadrature of the closed form
        p = SolitonParams(c=2.0)
        oracle = quad(lambda s: soliton_new(p, np.float64(s))[0] - 1.0,
                      -60.0, 60.0, epsabs=1e-13, epsrel=1e-13, limit=400)[0]
        assert oracle == pytest.approx(4.0 * np.pi / 3.0, abs=1e-12)
        vals = []
        for n in [1024, 2048, 4096]:
            g = build_grid(n, 80.0, -40.0)
            H, _ = soliton_new(p, g.x)
            vals.append(integrate(H - 1.0, g))
        assert abs(vals[-1] - oracle) < 1e-8
        assert abs(vals[-1] - vals[-2]) < 1e-10  # already converged


class TestProperties:
    def test_summation_by_parts(self, grid, rng):
        f = smooth_field(grid, rng)
        h = smooth_field(grid, rng)
        lhs = integrate(f * diff1(h, grid), grid)
        rhs = -integrate(h * diff1(f, grid), grid)
        assert abs(lhs - rhs) < 1e-13 * max(1.0, abs(lhs))

    def test_diff1_convergence_on_generic_smooth_field(self):
        errs = []
        for n in [64, 128, 256]:
            g = build_grid(n, 10.0, 0.0)
            f = np.exp(np.sin(2 * np.pi * g.x / g.length))
            w = 2 * np.pi / g.length
            exact = f * w * np.cos(w * g.x)
            errs.append(np.max(np.abs(diff1(f, g) - exact)))
        for e0, e1 in zip(errs, errs[1:]):
            assert 3.5 <= e0 / e1 <= 4.5
