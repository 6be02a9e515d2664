"""Command-line interface: config parsing, experiment subcommands, CSV output.

Subcommands: simulate | propagate | conserve | convergence | compare | exact.
Usage: hamswe <subcommand> --config <path> --out <dir>
       hamswe exact --c <speed> [--samples k] [--range xi_max] --out <dir>

Exit codes: 0 success, 1 usage/config error, 2 numerical failure
(depth positivity loss or gradient blow-up guard).

Output files are deterministic: identical configs produce byte-identical
CSVs, and run metadata lives in a separate run_meta.json sidecar.
"""

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .conservation import energy, momentum_flux
from .errors import ConfigError, DepthPositivityError, GradientBlowupError
from .grid import build_grid, integrate
from .kinds import DISPERSIVE_KINDS, ModelKind
from .models import State
from .solitons import (SolitonParams, check_implicit, check_traveling_ode,
                       crest_height, crest_position_new, soliton_gn,
                       soliton_new, validate_speed)
from .timestepper import InitialSpec, RunConfig, run

_MODEL_NAMES = {"new": ModelKind.NEW, "gn": ModelKind.GN, "swe": ModelKind.SWE}


# ---------------------------------------------------------------------------
# config parsing (strict: unknown keys are rejected)
# ---------------------------------------------------------------------------

def _require_number(obj, key, positive=False):
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"key {key!r} must be a number")
    if positive and not v > 0:
        raise ConfigError(f"key {key!r} must be positive, got {v}")
    return float(v)


def _parse_initial(obj) -> InitialSpec:
    if not isinstance(obj, dict):
        raise ConfigError("key 'initial' must be an object")
    if "type" not in obj:
        raise ConfigError("missing key type in initial")
    kind = obj["type"]
    allowed = {
        "rest": set(),
        "soliton": {"c", "center"},
        "gaussian": {"amplitude", "width", "center"},
    }
    if kind not in allowed:
        raise ConfigError(f"key 'initial.type' must be one of rest|soliton|gaussian, got {kind!r}")
    for k in obj:
        if k != "type" and k not in allowed[kind]:
            raise ConfigError(f"unknown key {k!r} in initial")
    center = _require_number(obj, "center") if "center" in obj else 0.0
    if kind == "rest":
        return InitialSpec(kind="rest")
    if kind == "soliton":
        if "c" not in obj:
            raise ConfigError("missing key c in initial")
        c = _require_number(obj, "c")
        if not c > 1.0:
            raise ConfigError(f"c must exceed 1, got {c}")
        return InitialSpec(kind="soliton", c=c, center=center)
    for req in ("amplitude", "width"):
        if req not in obj:
            raise ConfigError(f"missing key {req} in initial")
    return InitialSpec(kind="gaussian", amplitude=_require_number(obj, "amplitude"),
                       width=_require_number(obj, "width", positive=True), center=center)


_TOP_KEYS = {"model", "n", "length", "t_end", "x0", "dt", "snapshot_every",
             "initial", "cfl", "viscosity", "gradient_limit"}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration (strict mode)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    for k in obj:
        if k not in _TOP_KEYS:
            raise ConfigError(f"unknown key {k!r}")
    for req in ("model", "n", "length", "t_end"):
        if req not in obj:
            raise ConfigError(f"missing key {req}")
    model_name = obj["model"]
    if model_name not in _MODEL_NAMES:
        raise ConfigError(f"key 'model' must be one of new|gn|swe, got {model_name!r}")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigError("key 'n' must be an integer")
    if n < 8 or n % 2 != 0:
        raise ConfigError(f"key 'n' must be an even integer >= 8, got {n}")
    kwargs = dict(
        model=_MODEL_NAMES[model_name],
        n=n,
        length=_require_number(obj, "length", positive=True),
        t_end=_require_number(obj, "t_end", positive=True),
    )
    if "x0" in obj:
        kwargs["x0"] = _require_number(obj, "x0")
    if "dt" in obj:
        if obj["dt"] == "auto":
            kwargs["dt"] = "auto"
        else:
            kwargs["dt"] = _require_number(obj, "dt", positive=True)
    if "snapshot_every" in obj:
        kwargs["snapshot_every"] = _require_number(obj, "snapshot_every", positive=True)
    if "cfl" in obj:
        kwargs["cfl"] = _require_number(obj, "cfl", positive=True)
    if "viscosity" in obj:
        kwargs["viscosity"] = _require_number(obj, "viscosity")
    if "gradient_limit" in obj:
        kwargs["gradient_limit"] = _require_number(obj, "gradient_limit", positive=True)
    if "initial" in obj:
        kwargs["initial"] = _parse_initial(obj["initial"])
    return RunConfig(**kwargs)


def parse_compare_config(text: str):
    """Config for the compare subcommand: {"speeds": [...], "length"?, "n"?}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    for k in obj:
        if k not in {"speeds", "length", "n"}:
            raise ConfigError(f"unknown key {k!r}")
    if "speeds" not in obj:
        raise ConfigError("missing key speeds")
    speeds = obj["speeds"]
    if not isinstance(speeds, list) or not speeds:
        raise ConfigError("key 'speeds' must be a non-empty array")
    out = []
    for c in speeds:
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise ConfigError("key 'speeds' must contain numbers")
        if not c > 1.0:
            raise ConfigError(f"c must exceed 1, got {c}")
        out.append(float(c))
    length = _require_number(obj, "length", positive=True) if "length" in obj else 200.0
    n = obj.get("n", 16384)
    if isinstance(n, bool) or not isinstance(n, int) or n < 8 or n % 2:
        raise ConfigError("key 'n' must be an even integer >= 8")
    return out, length, n


# ---------------------------------------------------------------------------
# file output
# ---------------------------------------------------------------------------

def _fmt(v):
    return f"{float(v):.17g}"


def write_snapshot(t, s: State, m, g, path):
    """CSV with header x,u,H,m, one row per node, full double precision."""
    lines = ["x,u,H,m"]
    for i in range(g.n):
        lines.append(f"{_fmt(g.x[i])},{_fmt(s.u[i])},{_fmt(s.H[i])},{_fmt(m[i])}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_diagnostics(records, path):
    """CSV with header t,mass,energy,total_momentum,max_H,max_u."""
    lines = ["t,mass,energy,total_momentum,max_H,max_u"]
    for r in records:
        lines.append(",".join(_fmt(v) for v in
                              (r.t, r.mass, r.energy, r.total_momentum, r.max_H, r.max_u)))
    Path(path).write_text("\n".join(lines) + "\n")


def _write_meta(out_dir, command, config_obj):
    meta = {"tool": "hamswe", "version": __version__,
            "command": command, "config": config_obj}
    (Path(out_dir) / "run_meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _write_table(path, header, rows):
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _load_config(args):
    text = Path(args.config).read_text()
    return parse_config(text), json.loads(text)


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args):
    cfg, cfg_obj = _load_config(args)
    out = _out_dir(args)
    result = run(cfg)
    for i, snap in enumerate(result.snapshots):
        write_snapshot(snap.t, snap.state, snap.m, result.grid,
                       out / f"snapshot_{i:04d}.csv")
    write_diagnostics(result.diagnostics, out / "diagnostics.csv")
    _write_meta(out, "simulate", cfg_obj)
    print(f"simulate: {len(result.snapshots)} snapshots, "
          f"{len(result.diagnostics)} diagnostic rows, final t = {result.snapshots[-1].t:g}")
    return 0


def _exact_translate(cfg: RunConfig, g, t):
    ic = cfg.initial
    params = SolitonParams(c=ic.c, recenter=True)
    fam = soliton_new if cfg.model is ModelKind.NEW else soliton_gn
    xi = np.mod(g.x - ic.center - ic.c * t + 0.5 * g.length, g.length) - 0.5 * g.length
    return fam(params, xi)


def _propagation_errors(cfg, result):
    rows = []
    for snap in result.snapshots:
        He, ue = _exact_translate(cfg, result.grid, snap.t)
        diff = snap.state.H - He
        l2 = np.sqrt(integrate(diff**2, result.grid) / integrate((He - 1.0) ** 2, result.grid))
        rows.append((snap.t, l2, float(np.max(np.abs(diff)))))
    return rows


def _require_soliton_run(cfg):
    if cfg.model not in DISPERSIVE_KINDS or cfg.initial.kind != "soliton":
        raise ConfigError("this subcommand needs model new|gn with a soliton initial condition")


def cmd_propagate(args):
    cfg, cfg_obj = _load_config(args)
    _require_soliton_run(cfg)
    out = _out_dir(args)
    result = run(cfg)
    rows = _propagation_errors(cfg, result)
    _write_table(out / "errors.csv", "t,l2_error,max_error", rows)
    write_diagnostics(result.diagnostics, out / "diagnostics.csv")
    _write_meta(out, "propagate", cfg_obj)
    t, l2, mx = rows[-1]
    print(f"propagate: at t = {t:g}, relative L2 error = {l2:.6e}, max error = {mx:.6e}")
    return 0


def _relative_drifts(diags):
    d0 = diags[0]
    dm = max(abs(d.mass - d0.mass) for d in diags) / (1.0 + abs(d0.mass))
    dp = max(abs(d.total_momentum - d0.total_momentum) for d in diags) / (1.0 + abs(d0.total_momentum))
    de = max(abs(d.energy - d0.energy) for d in diags) / max(1.0, abs(d0.energy))
    return dm, de, dp


def cmd_conserve(args):
    cfg, cfg_obj = _load_config(args)
    out = _out_dir(args)
    result = run(cfg)
    write_diagnostics(result.diagnostics, out / "diagnostics.csv")
    _write_meta(out, "conserve", cfg_obj)
    dm, de, dp = _relative_drifts(result.diagnostics)
    print(f"conserve: max relative drift mass = {dm:.6e}")
    print(f"conserve: max relative drift energy = {de:.6e}")
    print(f"conserve: max relative drift momentum = {dp:.6e}")
    return 0


def cmd_convergence(args):
    cfg, cfg_obj = _load_config(args)
    _require_soliton_run(cfg)
    out = _out_dir(args)

    # spatial ladder n, 2n, 4n at auto (or given) dt
    ns, errs = [], []
    for factor in (1, 2, 4):
        c2 = dataclasses.replace(cfg, n=cfg.n * factor)
        res = run(c2)
        ns.append(c2.n)
        errs.append(_propagation_errors(c2, res)[-1][1])
    spatial_orders = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
    _write_table(out / "spatial.csv", "n,l2_error",
                 list(zip(ns, errs)))

    # temporal self-convergence on the fixed cfg.n grid
    g = build_grid(cfg.n, cfg.length, cfg.left_endpoint)
    base_cfg = dataclasses.replace(cfg, snapshot_every=None)
    from .timestepper import _wave_dt, build_initial_state
    s0 = build_initial_state(cfg, g)
    dt0 = cfg.t_end / int(np.ceil(cfg.t_end / _wave_dt(s0.u, s0.H, g.dx, cfg.cfl)))
    finals = []
    for k in range(4):
        res = run(dataclasses.replace(base_cfg, dt=dt0 / 2**k))
        finals.append(res.snapshots[-1].state.H)
    terrs = [float(np.max(np.abs(finals[k] - finals[3]))) for k in range(3)]
    temporal_orders = [np.log2(terrs[i] / terrs[i + 1]) for i in range(2)]
    _write_table(out / "temporal.csv", "dt,max_error",
                 [(dt0 / 2**k, terrs[k]) for k in range(3)])
    _write_meta(out, "convergence", cfg_obj)
    print(f"convergence: spatial errors {[f'{e:.3e}' for e in errs]} "
          f"orders {[f'{o:.2f}' for o in spatial_orders]}")
    print(f"convergence: temporal errors {[f'{e:.3e}' for e in terrs]} "
          f"orders {[f'{o:.2f}' for o in temporal_orders]}")
    return 0


def cmd_compare(args):
    text = Path(args.config).read_text()
    speeds, length, n = parse_compare_config(text)
    out = _out_dir(args)
    g = build_grid(n, length, -length / 2.0)
    rows = []
    for c in speeds:
        p = SolitonParams(c=c, recenter=True)
        Hn, un = soliton_new(p, g.x)
        Hg, ug = soliton_gn(p, g.x)
        rows.append((
            c,
            crest_height(c, ModelKind.NEW),
            crest_height(c, ModelKind.GN),
            integrate(Hn - 1.0, g),
            integrate(Hg - 1.0, g),
            energy(State(un, Hn), g, ModelKind.NEW),
            energy(State(ug, Hg), g, ModelKind.GN),
        ))
    _write_table(out / "compare.csv",
                 "c,crest_new,crest_gn,excess_mass_new,excess_mass_gn,energy_new,energy_gn",
                 rows)
    _write_meta(out, "compare", json.loads(text))
    for row in rows:
        print("compare: c = {:g}  crest new/gn = {:.12g}/{:.12g}  mass = {:.9g}/{:.9g}  "
              "energy = {:.9g}/{:.9g}".format(*row))
    return 0


def cmd_exact(args):
    c = args.c
    validate_speed(c)
    samples = args.samples
    if samples < 8 or samples % 2:
        raise ConfigError(f"--samples must be an even integer >= 8, got {samples}")
    xi_max = args.range
    if not xi_max > 0:
        raise ConfigError(f"--range must be positive, got {xi_max}")
    out = _out_dir(args)
    g = build_grid(samples, 2.0 * xi_max, -xi_max)
    p = SolitonParams(c=c, recenter=True)
    Hn, un = soliton_new(p, g.x)
    Hg, ug = soliton_gn(p, g.x)
    _write_table(out / "profiles.csv", "xi,H_new,u_new,H_gn,u_gn",
                 zip(g.x, Hn, un, Hg, ug))

    ode_res = check_traveling_ode(Hn, g, c)
    _write_table(out / "ode_residual.csv", "xi,residual", zip(g.x, ode_res))

    # implicit relation uses the non-recentered profile; crest and tails excluded
    pn = SolitonParams(c=c, recenter=False)
    Hi, _ = soliton_new(pn, g.x)
    ok = (Hi > 1.0 + 1e-13) & (Hi < c - 1e-13)
    res = check_implicit(Hi[ok], g.x[ok], c)
    _write_table(out / "implicit_residual.csv", "xi,residual", zip(g.x[ok], res))

    _write_meta(out, "exact", {"c": c, "samples": samples, "range": xi_max})
    print(f"exact: c = {c:g}, crest new/gn = {float(np.max(Hn)):.12g}/{float(np.max(Hg)):.12g}, "
          f"max |ode residual| = {float(np.max(np.abs(ode_res))):.3e}, "
          f"max |implicit residual| = {float(np.max(np.abs(res))):.3e}")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser():
    parser = _Parser(prog="hamswe",
                     description="Two-component dispersive shallow-water simulator")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, func in [("simulate", cmd_simulate), ("propagate", cmd_propagate),
                       ("conserve", cmd_conserve), ("convergence", cmd_convergence),
                       ("compare", cmd_compare)]:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON config file")
        sp.add_argument("--out", required=True, help="output directory")
        sp.set_defaults(func=func)
    ex = sub.add_parser("exact")
    ex.add_argument("--c", type=float, required=True, help="wave speed (> 1)")
    ex.add_argument("--samples", type=int, default=2048)
    ex.add_argument("--range", type=float, default=20.0)
    ex.add_argument("--out", required=True)
    ex.set_defaults(func=cmd_exact)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ConfigError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (DepthPositivityError, GradientBlowupError, np.linalg.LinAlgError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
