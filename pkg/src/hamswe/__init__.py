"""Two-component dispersive shallow-water systems in Hamiltonian variables.

The package simulates two fully nonlinear dispersive systems — one whose
Hamiltonian is the kinetic energy evaluated at the free surface, and the
Green-Naghdi (Serre) system — plus the classical shallow-water equations
as a non-dispersive reference.  Evolution runs in momentum variables
(m, H) with a per-step elliptic inversion, and the exact solitary-wave
families act as the verification oracles.
"""

__version__ = "0.1.0"

from .conservation import (Diagnostics, delta_energy_delta_H, energy, mass,
                           momentum_flux, swe_energy, total_momentum)
from .elliptic import BandedOperator, assemble
from .errors import ConfigError, DepthPositivityError, GradientBlowupError
from .grid import Grid, build_grid, diff1, diff2, forward_diff, integrate, link_average
from .kinds import DISPERSIVE_KINDS, ModelKind
from .models import (MomentumState, ScalingParams, State, dimensionalize,
                     m_from_u, nondimensionalize, reconstruct_fields,
                     rhs_hamiltonian, rhs_primitive_swe, u_from_m)
from .solitons import (SolitonParams, check_implicit, check_traveling_ode,
                       crest_height, crest_position_new, excess_mass_gn,
                       excess_mass_new, soliton_gn, soliton_new, validate_speed)
from .timestepper import (InitialSpec, RunConfig, RunResult, Snapshot,
                          build_initial_state, rk4_step, run, suggest_dt)

__all__ = [
    "__version__",
    "BandedOperator", "ConfigError", "DepthPositivityError", "Diagnostics",
    "DISPERSIVE_KINDS", "GradientBlowupError", "Grid", "InitialSpec",
    "ModelKind", "MomentumState", "RunConfig", "RunResult", "ScalingParams",
    "Snapshot", "SolitonParams", "State",
    "assemble", "build_grid", "build_initial_state", "check_implicit",
    "check_traveling_ode", "crest_height", "crest_position_new",
    "delta_energy_delta_H", "diff1", "diff2", "dimensionalize", "energy",
    "excess_mass_gn", "excess_mass_new", "forward_diff", "integrate",
    "link_average", "m_from_u", "mass", "momentum_flux", "nondimensionalize",
    "reconstruct_fields", "rhs_hamiltonian", "rhs_primitive_swe", "rk4_step",
    "run", "soliton_gn", "soliton_new", "suggest_dt", "swe_energy",
    "total_momentum", "u_from_m", "validate_speed",
]
