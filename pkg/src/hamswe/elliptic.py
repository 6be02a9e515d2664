"""Momentum operators and their inversion.

Both model families relate velocity u to momentum density m through a
linear, self-adjoint, positive-definite map:

    NEW: m = u - (H^2 u_x)_x
    GN:  m = H u - (1/3)(H^3 u_x)_x

Discretely the x-derivatives are taken in flux (divergence) form with
midpoint-averaged coefficients, which makes the assembled matrix a cyclic
tridiagonal that is symmetric exactly, by storage layout.  The inverse is
a direct O(n) solve: tridiagonal elimination plus a rank-one correction
for the periodic wrap.

A BandedOperator is immutable after assembly and may be shared across
threads.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import DepthPositivityError
from .grid import Grid, _check_field
from .kinds import DISPERSIVE_KINDS, ModelKind


@dataclass(frozen=True)
class BandedOperator:
    """Symmetric cyclic-tridiagonal operator.

    diag[i] is the main-diagonal entry at node i; off[i] couples nodes
    i and i+1 (mod n), so symmetry holds by construction.
    """

    kind: ModelKind
    diag: np.ndarray
    off: np.ndarray
    dx: float

    @property
    def n(self):
        return self.diag.size

    def apply(self, u):
        """Matrix-vector product T u."""
        u = np.asarray(u, dtype=float)
        if u.shape != self.diag.shape:
            raise ValueError(f"field has shape {u.shape}, expected {self.diag.shape}")
        return self.diag * u + self.off * np.roll(u, -1) + np.roll(self.off, 1) * np.roll(u, 1)

    def solve(self, m):
        """Solve T u = m by cyclic tridiagonal elimination.

        Sherman-Morrison: split off the two corner entries as a rank-one
        update of a plain tridiagonal system, then do two banded solves.
        """
        m = np.asarray(m, dtype=float)
        if m.shape != self.diag.shape:
            raise ValueError(f"field has shape {m.shape}, expected {self.diag.shape}")
        n = self.n
        corner = self.off[-1]
        gamma = -self.diag[0]
        b = self.diag.copy()
        b[0] -= gamma
        b[-1] -= corner * corner / gamma
        ab = np.zeros((3, n))
        ab[0, 1:] = self.off[:-1]
        ab[1, :] = b
        ab[2, :-1] = self.off[:-1]
        rank1 = np.zeros(n)
        rank1[0] = gamma
        rank1[-1] = corner
        y = solve_banded((1, 1), ab, m)
        z = solve_banded((1, 1), ab, rank1)
        vy = y[0] + corner / gamma * y[-1]
        vz = z[0] + corner / gamma * z[-1]
        denom = 1.0 + vz
        if denom == 0.0 or not np.all(np.isfinite(y)) or not np.all(np.isfinite(z)):
            raise np.linalg.LinAlgError("cyclic tridiagonal solve failed (singular operator)")
        return y - z * (vy / denom)


def assemble(H, g: Grid, kind: ModelKind) -> BandedOperator:
    """Assemble the momentum operator for depth profile H.

    Coefficients are midpoint averages H_{i+1/2} = (H[i] + H[i+1]) / 2,
    entering squared (NEW) or cubed with the 1/3 factor (GN).  Requires
    H > 0 everywhere, which makes the matrix positive definite.
    """
    if kind not in DISPERSIVE_KINDS:
        raise ValueError(f"no momentum operator for model kind {kind}")
    H = _check_field(H, g)
    if np.min(H) <= 0.0:
        raise DepthPositivityError(
            f"depth must stay positive: min H = {np.min(H)!r}")
    Hmid = 0.5 * (H + np.roll(H, -1))
    if kind is ModelKind.NEW:
        coeff = Hmid**2
        diag = 1.0 + (coeff + np.roll(coeff, 1)) / g.dx**2
    else:
        coeff = Hmid**3 / 3.0
        diag = H + (coeff + np.roll(coeff, 1)) / g.dx**2
    off = -coeff / g.dx**2
    return BandedOperator(kind=kind, diag=diag, off=off, dx=g.dx)
