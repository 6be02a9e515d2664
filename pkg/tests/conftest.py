import numpy as np
import pytest

from hamswe import build_grid


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def grid():
    return build_grid(128, 40.0, -20.0)


def smooth_field(g, rng, n_modes=6, scale=1.0):
    """Random smooth periodic field: a few low Fourier modes."""
    f = np.zeros(g.n)
    for k in range(1, n_modes + 1):
        a, b = rng.normal(size=2)
        f += a * np.sin(2 * np.pi * k * g.x / g.length)
        f += b * np.cos(2 * np.pi * k * g.x / g.length)
    return scale * f / n_modes


def smooth_depth(g, rng, amplitude=0.4):
    return 1.0 + amplitude * smooth_field(g, rng)
