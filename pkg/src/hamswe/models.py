"""Right-hand sides for the three systems, variable conversions, and scaling.

The two dispersive systems evolve in momentum variables (m, H):

    m_t = -[(m u)_x + m u_x] - H (dE/dH)_x
    H_t = -(H u)_x

with u recovered from m by an elliptic solve each evaluation, and dE/dH
the variational derivative of the energy with respect to depth at fixed
momentum.  The mass row is always discretized in flux form, so its
integral telescopes to zero exactly.

For the NEW system the momentum row is evaluated through its equivalent
local conservation-law form

    m_t = -(m u + u^2/2 + H^2/2 - (3/2) H^2 u_x^2)_x

plus a scalar projection that cancels the O(dx^2) defect of the discrete
energy balance.  The semi-discrete system then conserves mass, total
momentum, and the discrete energy all to rounding error, leaving RK4 as
the only drift source.  For GN the row is kept in the skew-adjoint form
above, which conserves the discrete energy exactly (total momentum then
drifts at the truncation level, O(dx^2)).
"""

from dataclasses import dataclass

import numpy as np

from .elliptic import assemble
from .errors import DepthPositivityError
from .grid import Grid, _check_field, diff1, forward_diff, link_average
from .kinds import DISPERSIVE_KINDS, ModelKind


def _check_depth(H):
    if np.min(H) <= 0.0:
        raise DepthPositivityError(f"depth must stay positive: min H = {np.min(H)!r}")


@dataclass(frozen=True)
class State:
    """Primitive variables: velocity u and depth H, collocated at nodes."""

    u: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        H = np.asarray(self.H, dtype=float)
        if u.shape != H.shape:
            raise ValueError(f"u and H shapes differ: {u.shape} vs {H.shape}")
        _check_depth(H)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "H", H)


@dataclass(frozen=True)
class MomentumState:
    """Hamiltonian evolution variables: momentum density m and depth H."""

    m: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        H = np.asarray(self.H, dtype=float)
        if m.shape != H.shape:
            raise ValueError(f"m and H shapes differ: {m.shape} vs {H.shape}")
        _check_depth(H)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "H", H)


@dataclass(frozen=True)
class ScalingParams:
    """Dimensional scales: depth h0, wavelength lam, amplitude a, gravity."""

    h0: float
    lam: float
    a: float
    gravity: float = 9.81

    def __post_init__(self):
        for name in ("h0", "lam", "a", "gravity"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @property
    def epsilon(self):
        """Amplitude parameter a / h0."""
        return self.a / self.h0

    @property
    def delta(self):
        """Long-wave parameter h0 / lam."""
        return self.h0 / self.lam


# ---------------------------------------------------------------------------
# variable conversion
# ---------------------------------------------------------------------------

def m_from_u(s: State, g: Grid, kind: ModelKind) -> MomentumState:
    """Momentum density from primitive variables, m = T_H u."""
    op = assemble(s.H, g, kind)
    return MomentumState(m=op.apply(s.u), H=s.H)


def u_from_m(ms: MomentumState, g: Grid, kind: ModelKind) -> State:
    """Velocity from momentum density, u = T_H^{-1} m."""
    op = assemble(ms.H, g, kind)
    return State(u=op.solve(ms.m), H=ms.H)


# ---------------------------------------------------------------------------
# energy gradient in H (shared with the conservation module)
# ---------------------------------------------------------------------------

def depth_gradient(u, H, g: Grid, kind: ModelKind):
    """Variational derivative of the discrete energy w.r.t. H at fixed m.

    Exact gradient of the discrete energy functional (link-averaged
    flux-form kinetic terms), so finite differences of the energy
    reproduce it to rounding error.  Continuum limits:

        NEW: -H u_x^2 + H - 1
        GN:  -u^2/2 - H^2 u_x^2 / 2 + H - 1
    """
    du = forward_diff(u, g)
    Hmid = link_average(H, g)
    if kind is ModelKind.NEW:
        w = Hmid * du**2
        return (H - 1.0) - 0.5 * (w + np.roll(w, 1))
    if kind is ModelKind.GN:
        w = Hmid**2 * du**2
        return (H - 1.0) - 0.5 * u**2 - 0.25 * (w + np.roll(w, 1))
    raise ValueError(f"no energy gradient for model kind {kind}")


# ---------------------------------------------------------------------------
# right-hand sides
# ---------------------------------------------------------------------------

def rhs_hamiltonian(ms: MomentumState, g: Grid, kind: ModelKind):
    """Time derivative (dm/dt, dH/dt) of the dispersive systems."""
    if kind not in DISPERSIVE_KINDS:
        raise ValueError(f"no Hamiltonian right-hand side for model kind {kind}")
    op = assemble(ms.H, g, kind)
    u = op.solve(ms.m)
    m, H = ms.m, ms.H
    dH_dt = -diff1(H * u, g)
    grad_H = depth_gradient(u, H, g, kind)
    if kind is ModelKind.NEW:
        ux = diff1(u, g)
        flux = m * u + 0.5 * u**2 + 0.5 * H**2 - 1.5 * H**2 * ux**2
        # scalar projection: with psi = flux + lam*ux the discrete energy
        # balance sum(ux*psi) + sum(grad_H_x * H * u) vanishes exactly
        den = float(np.dot(ux, ux))
        if den > 0.0:
            defect = float(np.dot(ux, flux)) + float(np.dot(diff1(grad_H, g), H * u))
            flux = flux + (-defect / den) * ux
        dm_dt = -diff1(flux, g)
    else:
        dm_dt = -(diff1(m * u, g) + m * diff1(u, g)) - H * diff1(grad_H, g)
    return dm_dt, dH_dt


def rhs_primitive_swe(s: State, g: Grid, viscosity=0.0):
    """Time derivative (du/dt, dH/dt) of the classical shallow-water system.

    Centered discretization; valid pre-shock only.  An optional artificial
    viscosity nu * u_xx can be added to the velocity equation to delay
    gradient blow-up in comparison runs.
    """
    from .grid import diff2

    u, H = s.u, s.H
    du_dt = -(u * diff1(u, g) + diff1(H, g))
    if viscosity != 0.0:
        du_dt = du_dt + viscosity * diff2(u, g)
    dH_dt = -diff1(H * u, g)
    return du_dt, dH_dt


# ---------------------------------------------------------------------------
# leading-order vertical structure and scaling
# ---------------------------------------------------------------------------

def reconstruct_fields(s: State, g: Grid, z_levels):
    """Leading-order vertical velocity and surface pressure.

    v(x, z) = -z * u_x(x) at each requested level, p(x) = H(x) - 1.
    Returns (v, p) with v of shape (len(z_levels), n).
    """
    z = np.atleast_1d(np.asarray(z_levels, dtype=float))
    if np.any(z < 0):
        raise ValueError("z_levels must be nonnegative")
    ux = diff1(s.u, g)
    v = -np.outer(z, ux)
    p = s.H - 1.0
    return v, p


def nondimensionalize(sp: ScalingParams, u, eta, x, t):
    """Map dimensional (u, eta, x, t) to nondimensional variables.

    x' = x / lam, t' = sqrt(g h0) t / lam, eta' = eta / a,
    u' = u / sqrt(g h0).
    """
    cref = np.sqrt(sp.gravity * sp.h0)
    return (np.asarray(u) / cref, np.asarray(eta) / sp.a,
            np.asarray(x) / sp.lam, np.asarray(t) * cref / sp.lam)


def dimensionalize(sp: ScalingParams, u, eta, x, t):
    """Inverse of nondimensionalize (exact algebraic rescaling)."""
    cref = np.sqrt(sp.gravity * sp.h0)
    return (np.asarray(u) * cref, np.asarray(eta) * sp.a,
            np.asarray(x) * sp.lam, np.asarray(t) * sp.lam / cref)
