"""Method-of-lines time integration, run orchestration, diagnostics capture.

A single run is sequential; independent runs share no mutable state and
may execute concurrently.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .conservation import Diagnostics, energy, mass, swe_energy, total_momentum
from .errors import ConfigError, DepthPositivityError, GradientBlowupError
from .grid import Grid, build_grid, diff1, integrate
from .kinds import DISPERSIVE_KINDS, ModelKind
from .models import (MomentumState, State, m_from_u, rhs_hamiltonian,
                     rhs_primitive_swe, u_from_m)
from .solitons import SolitonParams, soliton_gn, soliton_new


@dataclass(frozen=True)
class InitialSpec:
    """Initial-condition choice: rest | soliton{c, center} | gaussian{amplitude, width, center}."""

    kind: str = "rest"
    c: Optional[float] = None
    center: float = 0.0
    amplitude: Optional[float] = None
    width: Optional[float] = None


@dataclass(frozen=True)
class RunConfig:
    model: ModelKind
    n: int
    length: float
    t_end: float
    x0: Optional[float] = None          # default -length/2
    dt: Union[float, str] = "auto"
    snapshot_every: Optional[float] = None  # default t_end (initial + final only)
    initial: InitialSpec = field(default_factory=InitialSpec)
    cfl: float = 0.4
    viscosity: float = 0.0
    gradient_limit: float = 1e3

    def __post_init__(self):
        if not self.t_end > 0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if self.snapshot_every is not None and not self.snapshot_every > 0:
            raise ConfigError(f"snapshot_every must be positive, got {self.snapshot_every}")
        if isinstance(self.dt, str):
            if self.dt != "auto":
                raise ConfigError(f'dt must be a positive number or "auto", got {self.dt!r}')
        elif not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.cfl > 0:
            raise ConfigError(f"cfl must be positive, got {self.cfl}")

    @property
    def left_endpoint(self):
        return -self.length / 2.0 if self.x0 is None else self.x0

    @property
    def snapshot_interval(self):
        return self.t_end if self.snapshot_every is None else self.snapshot_every


@dataclass(frozen=True)
class Snapshot:
    t: float
    state: State
    m: np.ndarray


@dataclass(frozen=True)
class RunResult:
    grid: Grid
    snapshots: list
    diagnostics: list


# ---------------------------------------------------------------------------
# step size and stepping
# ---------------------------------------------------------------------------

def _wave_dt(u, H, dx, cfl):
    """cfl * dx over the fastest gravity-wave speed |u| + sqrt(H)."""
    speed = float(np.max(np.abs(u) + np.sqrt(H)))
    if speed <= 0.0:
        return cfl * dx
    return cfl * dx / speed


def suggest_dt(ms: MomentumState, g: Grid, cfl, kind: ModelKind = ModelKind.NEW):
    """Stable step suggestion for the current state.

    Recovers u from m (the operator kind is needed for that inversion),
    then dt = cfl * dx / max(|u| + sqrt(H)).
    """
    from .models import u_from_m

    s = u_from_m(ms, g, kind)
    return _wave_dt(s.u, s.H, g.dx, cfl)


def _check_stage_depth(H, stage):
    mn = float(np.min(H))
    if mn <= 0.0:
        raise DepthPositivityError(
            f"depth positivity lost at stage {stage}: min H = {mn!r}")


def rk4_step(ms: MomentumState, dt, g: Grid, kind: ModelKind) -> MomentumState:
    """One classical four-stage Runge-Kutta step of (m, H) jointly.

    Depth positivity is checked at every stage; dt may be negative
    (used by time-reversal checks).
    """
    m0, H0 = ms.m, ms.H
    k1m, k1H = rhs_hamiltonian(ms, g, kind)
    H = H0 + 0.5 * dt * k1H
    _check_stage_depth(H, 2)
    k2m, k2H = rhs_hamiltonian(MomentumState(m0 + 0.5 * dt * k1m, H), g, kind)
    H = H0 + 0.5 * dt * k2H
    _check_stage_depth(H, 3)
    k3m, k3H = rhs_hamiltonian(MomentumState(m0 + 0.5 * dt * k2m, H), g, kind)
    H = H0 + dt * k3H
    _check_stage_depth(H, 4)
    k4m, k4H = rhs_hamiltonian(MomentumState(m0 + dt * k3m, H), g, kind)
    m1 = m0 + (dt / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m)
    H1 = H0 + (dt / 6.0) * (k1H + 2.0 * k2H + 2.0 * k3H + k4H)
    _check_stage_depth(H1, 5)
    return MomentumState(m1, H1)


def _rk4_step_primitive(u0, H0, dt, g, viscosity):
    """RK4 on the primitive (u, H) classical shallow-water system."""
    def f(u, H, stage):
        _check_stage_depth(H, stage)
        return rhs_primitive_swe(State(u, H), g, viscosity)

    k1u, k1H = f(u0, H0, 1)
    k2u, k2H = f(u0 + 0.5 * dt * k1u, H0 + 0.5 * dt * k1H, 2)
    k3u, k3H = f(u0 + 0.5 * dt * k2u, H0 + 0.5 * dt * k2H, 3)
    k4u, k4H = f(u0 + dt * k3u, H0 + dt * k3H, 4)
    u1 = u0 + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    H1 = H0 + (dt / 6.0) * (k1H + 2.0 * k2H + 2.0 * k3H + k4H)
    _check_stage_depth(H1, 5)
    return u1, H1


# ---------------------------------------------------------------------------
# initial data
# ---------------------------------------------------------------------------

def _wrap_offset(x, center, length):
    return np.mod(x - center + 0.5 * length, length) - 0.5 * length


def build_initial_state(cfg: RunConfig, g: Grid) -> State:
    ic = cfg.initial
    if ic.kind == "rest":
        return State(u=np.zeros(g.n), H=np.ones(g.n))
    if ic.kind == "soliton":
        if cfg.model not in DISPERSIVE_KINDS:
            raise ConfigError("initial.type 'soliton' requires model 'new' or 'gn'")
        if ic.c is None:
            raise ConfigError("missing key c in soliton initial condition")
        xi = _wrap_offset(g.x, ic.center, g.length)
        params = SolitonParams(c=ic.c, recenter=True)
        fam = soliton_new if cfg.model is ModelKind.NEW else soliton_gn
        H, u = fam(params, xi)
        return State(u=u, H=H)
    if ic.kind == "gaussian":
        if ic.amplitude is None or ic.width is None:
            raise ConfigError("gaussian initial condition needs keys amplitude and width")
        if not ic.width > 0:
            raise ConfigError(f"width must be positive, got {ic.width}")
        xi = _wrap_offset(g.x, ic.center, g.length)
        H = 1.0 + ic.amplitude * np.exp(-(xi**2) / (2.0 * ic.width**2))
        if np.min(H) <= 0.0:
            raise ConfigError(f"gaussian amplitude {ic.amplitude} drives depth nonpositive")
        return State(u=np.zeros(g.n), H=H)
    raise ConfigError(f"unknown initial condition type {ic.kind!r}")


# ---------------------------------------------------------------------------
# the run loop
# ---------------------------------------------------------------------------

def _snapshot_times(cfg: RunConfig):
    interval = cfg.snapshot_interval
    times = []
    k = 1
    while k * interval < cfg.t_end * (1.0 - 1e-12):
        times.append(k * interval)
        k += 1
    times.append(cfg.t_end)
    return times


def run(cfg: RunConfig) -> RunResult:
    """Advance the configured model to t_end.

    Snapshots land exactly on multiples of the snapshot interval and on
    t_end (the step is shortened as needed; a fixed dt is otherwise
    honored verbatim, and dt="auto" re-evaluates the step bound from the
    current state every step).  Diagnostics are recorded at every step.
    """
    g = build_grid(cfg.n, cfg.length, cfg.left_endpoint)
    s0 = build_initial_state(cfg, g)
    dispersive = cfg.model in DISPERSIVE_KINDS

    if dispersive:
        ms = m_from_u(s0, g, cfg.model)
        m, H = ms.m, ms.H
        u = s0.u
    else:
        u, H = s0.u, s0.H
        m = H * u  # momentum density of the classical system

    def diagnose(t):
        s = State(u, H)
        e = energy(s, g, cfg.model) if dispersive else swe_energy(s, g)
        return Diagnostics(t=t, mass=mass(s, g), energy=e,
                           total_momentum=integrate(m, g),
                           max_H=float(np.max(H)), max_u=float(np.max(np.abs(u))))

    def guard(t):
        if not dispersive:
            gmax = float(np.max(np.abs(diff1(u, g))))
            if gmax > cfg.gradient_limit:
                raise GradientBlowupError(
                    f"max|u_x| = {gmax:.6g} exceeded the limit {cfg.gradient_limit:.6g} at t = {t:.6g}")

    snapshots = [Snapshot(t=0.0, state=State(u, H), m=m.copy())]
    diagnostics = [diagnose(0.0)]
    guard(0.0)

    t = 0.0
    for event in _snapshot_times(cfg):
        eps = 1e-12 * max(1.0, abs(event))
        while event - t > eps:
            if cfg.dt == "auto":
                dt = _wave_dt(u, H, g.dx, cfg.cfl)
            else:
                dt = float(cfg.dt)
            landing = t + dt >= event - eps
            if landing:
                dt = event - t
            if dispersive:
                next_ms = rk4_step(MomentumState(m, H), dt, g, cfg.model)
                m, H = next_ms.m, next_ms.H
                u = u_from_m(next_ms, g, cfg.model).u
            else:
                u, H = _rk4_step_primitive(u, H, dt, g, cfg.viscosity)
                m = H * u
            t = event if landing else t + dt
            diagnostics.append(diagnose(t))
            guard(t)
        t = event
        snapshots.append(Snapshot(t=t, state=State(u, H), m=m.copy()))

    return RunResult(grid=g, snapshots=snapshots, diagnostics=diagnostics)
