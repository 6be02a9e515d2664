"""Uniform periodic 1-D mesh with second-order difference operators and quadrature.

All operators are pure functions of their inputs and safe to call from
multiple threads.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform periodic mesh on [x0, x0 + length).

    Attributes:
        n: node count (even, >= 8)
        length: domain length
        x0: left endpoint
        dx: spacing, exactly length / n
        x: node coordinates x[i] = x0 + i * dx
    """

    n: int
    length: float
    x0: float
    dx: float
    x: np.ndarray


def build_grid(n, length, x0=0.0):
    """Build a periodic grid with n nodes on [x0, x0 + length)."""
    if not isinstance(n, (int, np.integer)):
        raise ValueError(f"n must be an integer, got {n!r}")
    if n < 8:
        raise ValueError(f"n too small: need n >= 8, got {n}")
    if n % 2 != 0:
        raise ValueError(f"n must be even, got {n}")
    if not length > 0:
        raise ValueError(f"length must be positive, got {length}")
    dx = length / n
    x = x0 + dx * np.arange(n)
    return Grid(n=int(n), length=float(length), x0=float(x0), dx=dx, x=x)


def _check_field(f, g):
    f = np.asarray(f, dtype=float)
    if f.shape != (g.n,):
        raise ValueError(f"field has shape {f.shape}, expected ({g.n},)")
    return f


def diff1(f, g):
    """Centered periodic first derivative, (f[i+1] - f[i-1]) / (2 dx)."""
    f = _check_field(f, g)
    return (np.roll(f, -1) - np.roll(f, 1)) / (2.0 * g.dx)


def diff2(f, g):
    """Centered periodic second derivative, (f[i+1] - 2 f[i] + f[i-1]) / dx^2."""
    f = _check_field(f, g)
    return (np.roll(f, -1) - 2.0 * f + np.roll(f, 1)) / g.dx**2


def integrate(f, g):
    """Periodic rectangle rule, dx * sum(f).

    Spectrally accurate for smooth periodic integrands.
    """
    f = _check_field(f, g)
    return g.dx * float(np.sum(f))


def forward_diff(f, g):
    """Forward difference (f[i+1] - f[i]) / dx, living on links (i, i+1)."""
    f = _check_field(f, g)
    return (np.roll(f, -1) - f) / g.dx


def link_average(f, g):
    """Midpoint average (f[i] + f[i+1]) / 2, living on links (i, i+1)."""
    f = _check_field(f, g)
    return 0.5 * (f + np.roll(f, -1))
