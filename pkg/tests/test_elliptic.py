import numpy as np
import pytest

from hamswe import (DepthPositivityError, ModelKind, assemble, build_grid,
                    forward_diff, integrate, link_average)
from conftest import smooth_depth, smooth_field


class TestAssemble:
    def test_constant_depth_new(self, grid):
        T = assemble(np.ones(grid.n), grid, ModelKind.NEW)
        assert np.allclose(T.diag, 1.0 + 2.0 / grid.dx**2, rtol=0, atol=1e-14)
        assert np.allclose(T.off, -1.0 / grid.dx**2, rtol=0, atol=1e-14)

    def test_constant_depth_gn(self, grid):
        T = assemble(np.ones(grid.n), grid, ModelKind.GN)
        assert np.allclose(T.diag, 1.0 + (2.0 / 3.0) / grid.dx**2, rtol=0, atol=1e-14)
        assert np.allclose(T.off, -(1.0 / 3.0) / grid.dx**2, rtol=0, atol=1e-14)

    def test_rejects_nonpositive_depth(self, grid):
        H = np.ones(grid.n)
        H[5] = 0.0
        with pytest.raises(DepthPositivityError, match="depth must stay positive"):
            assemble(H, grid, ModelKind.NEW)

    def test_rejects_swe_kind(self, grid):
        with pytest.raises(ValueError, match="momentum operator"):
            assemble(np.ones(grid.n), grid, ModelKind.SWE)


class TestApply:
    def test_constant_velocity_flat_depth(self, grid):
        T = assemble(np.ones(grid.n), grid, ModelKind.NEW)
        m = T.apply(np.full(grid.n, 3.5))
        assert np.max(np.abs(m - 3.5)) < 1e-12

    def test_zero(self, grid, rng):
        T = assemble(smooth_depth(grid, rng), grid, ModelKind.NEW)
        assert np.all(T.apply(np.zeros(grid.n)) == 0.0)

    def test_discrete_eigenpair(self):
        g = build_grid(64, 16.0, -8.0)
        k = 2 * np.pi / g.length
        u = np.sin(k * g.x)
        T = assemble(np.ones(g.n), g, ModelKind.NEW)
        lam = 1.0 + 2.0 * (1.0 - np.cos(k * g.dx)) / g.dx**2
        assert np.max(np.abs(T.apply(u) - lam * u)) < 1e-12


class TestSolve:
    def test_constant(self, grid):
        T = assemble(np.ones(grid.n), grid, ModelKind.NEW)
        u = T.solve(np.full(grid.n, 3.5))
        assert np.max(np.abs(u - 3.5)) < 1e-12

    @pytest.mark.parametrize("kind", [ModelKind.NEW, ModelKind.GN])
    def test_roundtrip_smooth(self, grid, rng, kind):
        H = smooth_depth(grid, rng)
        u = smooth_field(grid, rng)
        T = assemble(H, grid, kind)
        back = T.solve(T.apply(u))
        assert np.max(np.abs(back - u)) <= 1e-10

    def test_roundtrip_rough_positive_depth(self, grid, rng):
        H = rng.uniform(0.3, 2.0, size=grid.n)  # rough is fine, SPD only needs H > 0
        u = rng.normal(size=grid.n)
        T = assemble(H, grid, ModelKind.NEW)
        assert np.max(np.abs(T.solve(T.apply(u)) - u)) <= 1e-10

    def test_inverse_of_eigenpair(self):
        g = build_grid(64, 16.0, -8.0)
        k = 2 * np.pi / g.length
        u = np.sin(k * g.x)
        T = assemble(np.ones(g.n), g, ModelKind.NEW)
        lam = 1.0 + 2.0 * (1.0 - np.cos(k * g.dx)) / g.dx**2
        assert np.max(np.abs(T.solve(lam * u) - u)) < 1e-11

    def test_residual_small(self, grid, rng):
        H = smooth_depth(grid, rng)
        T = assemble(H, grid, ModelKind.GN)
        m = smooth_field(grid, rng)
        u = T.solve(m)
        res = T.apply(u) - m
        assert np.max(np.abs(res)) <= 1e-12 * max(1.0, np.max(np.abs(m)))


class TestOperatorProperties:
    @pytest.mark.parametrize("kind", [ModelKind.NEW, ModelKind.GN])
    def test_self_adjoint(self, grid, rng, kind):
        H = smooth_depth(grid, rng)
        T = assemble(H, grid, kind)
        for _ in range(20):
            u = rng.normal(size=grid.n)
            v = rng.normal(size=grid.n)
            lhs = integrate(T.apply(u) * v, grid)
            rhs = integrate(u * T.apply(v), grid)
            nu = np.sqrt(integrate(u * u, grid))
            nv = np.sqrt(integrate(v * v, grid))
            assert abs(lhs - rhs) <= 1e-12 * nu * nv

    @pytest.mark.parametrize("kind", [ModelKind.NEW, ModelKind.GN])
    def test_positive_definite(self, grid, rng, kind):
        H = rng.uniform(0.2, 3.0, size=grid.n)
        T = assemble(H, grid, kind)
        for _ in range(100):
            u = rng.normal(size=grid.n)
            assert integrate(T.apply(u) * u, grid) > 0.0

    def test_quadratic_form_matches_energy_integrand(self, grid, rng):
        # <Tu, u> = integral of u^2 + Hmid^2 (forward-difference u)^2
        H = smooth_depth(grid, rng)
        u = smooth_field(grid, rng)
        T = assemble(H, grid, ModelKind.NEW)
        lhs = integrate(T.apply(u) * u, grid)
        du = forward_diff(u, grid)
        rhs = integrate(u**2 + link_average(H, grid) ** 2 * du**2, grid)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
