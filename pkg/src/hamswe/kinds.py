"""Model family tags shared across the package."""

from enum import Enum


class ModelKind(Enum):
    """The three shallow-water systems the package handles.

    NEW:  two-component system whose Hamiltonian is the kinetic energy
          evaluated at the free surface plus the potential energy;
          momentum density m = u - (H^2 u_x)_x.
    GN:   Green-Naghdi (Serre / Su-Gardner) system, depth-integrated
          kinetic energy; momentum density m = H u - (1/3)(H^3 u_x)_x.
    SWE:  classical (non-dispersive) shallow-water equations, included
          for comparison runs only.
    """

    NEW = "new"
    GN = "gn"
    SWE = "swe"


DISPERSIVE_KINDS = (ModelKind.NEW, ModelKind.GN)
