"""Deterministic command-line front end.

Every subcommand writes exactly the files it declares (LF line endings, 17
significant digits) and prints a one-line summary with a digest of the
resolved inputs and of the written bytes. Identical invocations produce
byte-identical files at any NCWIGNER_THREADS setting.

Exit codes: 0 success, 2 usage (unknown flags, malformed values, conflicting
physics sources), 3 invalid physics (theta*eta >= hbar**2, eps outside
[0, 1), sigma <= 0, beat subcommands at gamma = 0), 4 numeric trouble (grid
coverage or a --verify check that does not hold).
"""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .dynamics import InitialData, evolve, invariants, ode_residual, orbit_closure
from .errors import GridCoverageError, InvalidPhysics
from .information import entropies
from .params import DerivedParams, OscillatorConfig, derive_params
from .special import gauss_hermite
from .thermo import (
    ThermoPoint,
    distortion_map,
    missing_information,
    partition,
    sigma_max,
    thermo_report,
)
from .wigner import CartesianModes, ModeIndex, PhaseGrid, cartesian_mode, trace_out
from .zeeman import mode_map, zeeman_energy
from .wigner import energy as cartesian_energy

__all__ = ["RunConfig", "run", "main"]

_PHYS_FLAGS = ("m", "omega", "hbar", "theta", "eta")


class _VerifyFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs of one invocation; its repr feeds the inputs digest."""

    subcommand: str
    m: float
    omega: float
    hbar: float
    theta: float
    eta: float
    quad_order: int
    grid_n: int
    grid_x: float
    seed: int
    verify: bool
    extras: Tuple[Tuple[str, object], ...] = field(default_factory=tuple)

    def digest(self) -> str:
        return hashlib.sha256(repr(self).encode()).hexdigest()[:8]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    phys = common.add_argument_group("physics")
    for name in _PHYS_FLAGS:
        phys.add_argument(f"--{name}", type=float, default=None)
    phys.add_argument("--epsilon", type=float, default=None,
                      help="beat ratio shorthand; excludes the five physical flags and --config")
    phys.add_argument("--config", type=str, default=None,
                      help="key=value file with any of: m, omega, hbar, theta, eta")
    num = common.add_argument_group("numerics and output")
    num.add_argument("--quad-order", type=int, default=40)
    num.add_argument("--grid-n", type=int, default=201)
    num.add_argument("--grid-x", type=float, default=6.0)
    num.add_argument("--out", type=str, default=None)
    num.add_argument("--verify", action="store_true")
    num.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="ncwigner", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("trajectory", parents=[common])
    sp.add_argument("--tmax", type=str, default="auto")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--init", type=str, default="1,0,0,0")

    for name in ("wigner-grid", "beat"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--nx", type=int, default=0)
        sp.add_argument("--ny", type=int, default=0)
        sp.add_argument("--plane", type=int, choices=(1, 2), default=1)
        if name == "wigner-grid":
            sp.add_argument("--t", type=float, default=0.0)
        else:
            sp.add_argument("--frames", type=int, default=5)

    sp = sub.add_parser("entropy", parents=[common])
    sp.add_argument("--nx", type=int, default=1)
    sp.add_argument("--ny", type=int, default=0)
    sp.add_argument("--tmax", type=float, default=None)
    sp.add_argument("--samples", type=int, default=9)

    sp = sub.add_parser("thermo", parents=[common])
    sp.add_argument("--sigma", type=float, default=None)
    sp.add_argument("--sigma-min", type=float, default=0.1)
    sp.add_argument("--sigma-max", type=float, default=10.0)
    sp.add_argument("--samples", type=int, default=25)

    sp = sub.add_parser("orbital-distortion", parents=[common])
    sp.add_argument("--sigma", type=float, default=1.0)

    sub.add_parser("sigma-max", parents=[common])

    sp = sub.add_parser("zeeman", parents=[common])
    sp.add_argument("--level", type=int, default=8)

    return parser


def _read_config_file(path: str) -> dict:
    data = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {text!r}")
            key, _, value = text.partition("=")
            data[key.strip()] = value.strip()
    return data


def _resolve_config(ns: argparse.Namespace) -> OscillatorConfig:
    explicit = [f for f in _PHYS_FLAGS if getattr(ns, f) is not None]
    if ns.epsilon is not None:
        if explicit or ns.config:
            raise ValueError(
                "--epsilon conflicts with --config and the physical flags "
                f"({', '.join('--' + f for f in explicit) or '--config'})"
            )
        return OscillatorConfig.natural(ns.epsilon)
    values = {}
    if ns.config:
        values.update(_read_config_file(ns.config))
        OscillatorConfig.from_mapping(values)  # validate keys early
    for name in _PHYS_FLAGS:
        flag = getattr(ns, name)
        if flag is not None:
            values[name] = flag
    return OscillatorConfig.from_mapping(values)


def _run_config(ns: argparse.Namespace, cfg: OscillatorConfig, extras: Sequence[Tuple[str, object]]) -> RunConfig:
    return RunConfig(
        subcommand=ns.subcommand,
        m=cfg.m, omega=cfg.omega, hbar=cfg.hbar, theta=cfg.theta, eta=cfg.eta,
        quad_order=ns.quad_order, grid_n=ns.grid_n, grid_x=ns.grid_x,
        seed=ns.seed, verify=ns.verify,
        extras=tuple(sorted((k, v) for k, v in extras)),
    )


def _write(path: str, text: str) -> Tuple[str, int]:
    data = text.encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)
    return hashlib.sha256(data).hexdigest(), len(data)


def _summary(rc: RunConfig, written: str, digest: str) -> None:
    print(f"{rc.subcommand}: inputs {rc.digest()} -> {written} ({digest[:12]})")


def _csv(header: str, rows: List[List[float]], trailer: List[str]) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    lines.extend(trailer)
    return "\n".join(lines) + "\n"


def _dense(header_vals: List[float], field2d: np.ndarray, trailer: List[str]) -> str:
    lines = [" ".join(_fmt(v) for v in header_vals)]
    lines.extend(" ".join(_fmt(v) for v in row) for row in field2d)
    lines.extend(trailer)
    return "\n".join(lines) + "\n"


def _cmd_trajectory(ns, cfg: OscillatorConfig, p: DerivedParams) -> int:
    init = tuple(float(v) for v in ns.init.split(","))
    if len(init) != 4:
        raise ValueError("--init needs four comma-separated numbers")
    start = InitialData(*init)
    if ns.tmax == "auto":
        period = orbit_closure(p)
        if period is None:
            if p.gamma == 0.0:
                raise InvalidPhysics("no closed orbit and gamma = 0; pass an explicit --tmax")
            period = 2.0 * math.pi / p.gamma
        tmax = period
    else:
        tmax = float(ns.tmax)
    if ns.samples < 2:
        raise ValueError("--samples must be at least 2")
    times = np.linspace(0.0, tmax, ns.samples)
    rows = []
    for t in times:
        pt = evolve(p, start, float(t))
        xi2, ang = invariants(p, pt)
        rows.append([t, pt.Q1, pt.Pi1, pt.Q2, pt.Pi2, xi2, ang])
    trailer: List[str] = []
    if ns.verify:
        xi0, l0 = rows[0][5], rows[0][6]
        drift = max(
            max(abs(r[5] - xi0) / max(abs(xi0), 1e-300), abs(r[6] - l0)) for r in rows
        )
        rng = np.random.default_rng(ns.seed)
        spots = rng.uniform(0.0, max(tmax, 1.0), size=3)
        resid = max(ode_residual(p, start, float(t), 1e-4) for t in spots)
        trailer.append(f"# verify: invariant drift {_fmt(drift)}, ode residual {_fmt(resid)}")
        if drift > 1e-9 or resid > 1e-5:
            raise _VerifyFailure(f"trajectory self-check failed (drift {drift:g}, residual {resid:g})")
    rc = _run_config(ns, cfg, [("tmax", ns.tmax), ("samples", ns.samples), ("init", ns.init)])
    path = ns.out or "trajectory.csv"
    digest, _ = _write(path, _csv("t,Q1,Pi1,Q2,Pi2,xi2,L", rows, trailer))
    _summary(rc, path, digest)
    return 0


def _field_mass(field: np.ndarray, grid: PhaseGrid) -> float:
    return float(field.sum()) * grid.cell_area


def _cmd_wigner_grid(ns, cfg, p) -> int:
    grid = PhaseGrid(ns.grid_x, ns.grid_n)
    rule = gauss_hermite(ns.quad_order)
    modes = CartesianModes(ns.nx, ns.ny)
    field = trace_out(p, modes, ns.t, ns.plane, grid, rule)
    ax = grid.axis()
    rows = [
        [r, k, field[i, j]]
        for i, r in enumerate(ax)
        for j, k in enumerate(ax)
    ]
    trailer: List[str] = []
    if ns.verify:
        mass = _field_mass(field, grid)
        trailer.append(f"# verify: mass {_fmt(mass)}")
        if abs(mass - 1.0) > 1e-3:
            raise _VerifyFailure(f"reduced field mass {mass:g} not within 1e-3 of 1")
    rc = _run_config(ns, cfg, [("nx", ns.nx), ("ny", ns.ny), ("plane", ns.plane), ("t", ns.t)])
    path = ns.out or "wigner_grid.csv"
    digest, _ = _write(path, _csv("r,k,value", rows, trailer))
    _summary(rc, path, digest)
    return 0


def _frame_paths(out: Optional[str], frames: int) -> List[str]:
    base = out or "beat.txt"
    stem, ext = os.path.splitext(base)
    return [f"{stem}_{j:02d}{ext or '.txt'}" for j in range(frames)]


def _cmd_beat(ns, cfg, p) -> int:
    if p.gamma == 0.0:
        raise InvalidPhysics("beat requires gamma > 0 (theta or eta nonzero)")
    if ns.frames < 2:
        raise ValueError("--frames must be at least 2")
    grid = PhaseGrid(ns.grid_x, ns.grid_n)
    rule = gauss_hermite(ns.quad_order)
    modes = CartesianModes(ns.nx, ns.ny)
    beat_period = math.pi / p.gamma
    paths = _frame_paths(ns.out, ns.frames)
    whole = hashlib.sha256()
    for j, path in enumerate(paths):
        t = beat_period * j / (ns.frames - 1)
        field = trace_out(p, modes, t, ns.plane, grid, rule)
        trailer: List[str] = []
        if ns.verify:
            mass = _field_mass(field, grid)
            trailer.append(f"# verify: mass {_fmt(mass)}")
            if abs(mass - 1.0) > 1e-3:
                raise _VerifyFailure(f"frame {j} mass {mass:g} not within 1e-3 of 1")
        text = _dense([grid.samples, grid.extent, t, ns.nx, ns.ny, ns.plane], field, trailer)
        digest, _ = _write(path, text)
        whole.update(digest.encode())
    rc = _run_config(ns, cfg, [("nx", ns.nx), ("ny", ns.ny), ("plane", ns.plane), ("frames", ns.frames)])
    _summary(rc, f"{paths[0]}..{paths[-1]}", whole.hexdigest())
    return 0


def _cmd_entropy(ns, cfg, p) -> int:
    if ns.samples < 1:
        raise ValueError("--samples must be at least 1")
    tmax = ns.tmax
    if tmax is None:
        tmax = math.pi / p.gamma if p.gamma > 0 else 1.0
    grid = PhaseGrid(ns.grid_x, ns.grid_n)
    rule = gauss_hermite(ns.quad_order)
    modes = CartesianModes(ns.nx, ns.ny)
    rows = []
    worst = 0.0
    for t in np.linspace(0.0, tmax, ns.samples):
        rep = entropies(p, modes, float(t), grid, rule)
        rows.append([rep.t, rep.S1, rep.S2, rep.S12, rep.I12])
        worst = max(worst, abs(rep.S12))
    trailer: List[str] = []
    if ns.verify:
        trailer.append(f"# verify: max |S12| {_fmt(worst)}")
        if worst > 1e-4:
            raise _VerifyFailure(f"pure product developed S12 = {worst:g}")
    rc = _run_config(ns, cfg, [("nx", ns.nx), ("ny", ns.ny), ("tmax", tmax), ("samples", ns.samples)])
    path = ns.out or "entropy.csv"
    digest, _ = _write(path, _csv("t,S1,S2,S12,I12", rows, trailer))
    _summary(rc, path, digest)
    return 0


def _explicit_cv(s: float, e: float) -> float:
    gap = 2.0 * math.sinh(0.5 * s * (1.0 + e)) * math.sinh(0.5 * s * (1.0 - e))
    num = (1.0 + e * e) * (math.cosh(s) * math.cosh(e * s) - 1.0) - 2.0 * e * math.sinh(
        s
    ) * math.sinh(e * s)
    return s * s * num / (gap * gap)


def _cmd_thermo(ns, cfg, p) -> int:
    eps = p.beat_ratio
    if ns.sigma is not None:
        sigmas = [ns.sigma]
    else:
        if ns.samples < 1:
            raise ValueError("--samples must be at least 1")
        sigmas = list(np.linspace(ns.sigma_min, ns.sigma_max, ns.samples))
    rule = gauss_hermite(ns.quad_order)
    rows = []
    worst = 0.0
    for s in sigmas:
        tp = ThermoPoint(float(s), eps)
        rep = thermo_report(tp)
        ds12, di12 = missing_information(float(s), eps, rule) if eps > 0 else (0.0, 0.0)
        rows.append([s, rep.Z, rep.U, rep.Sk, rep.Cv, ds12, di12])
        worst = max(worst, abs(rep.Cv - _explicit_cv(float(s), eps)) / max(rep.Cv, 1e-300))
    trailer: List[str] = []
    if ns.verify:
        trailer.append(f"# verify: max Cv route mismatch {_fmt(worst)}")
        if worst > 1e-9:
            raise _VerifyFailure(f"heat-capacity routes disagree by {worst:g}")
    rc = _run_config(
        ns, cfg,
        [("sigma", ns.sigma), ("sigma_min", ns.sigma_min), ("sigma_max", ns.sigma_max), ("samples", ns.samples)],
    )
    path = ns.out or "thermo.csv"
    digest, _ = _write(path, _csv("sigma,Z,U,Sk,Cv,dS12,dI12", rows, trailer))
    _summary(rc, path, digest)
    return 0


def _cmd_orbital_distortion(ns, cfg, p) -> int:
    tp = ThermoPoint(ns.sigma, p.beat_ratio)
    grid = PhaseGrid(ns.grid_x, ns.grid_n)
    rule = gauss_hermite(ns.quad_order)
    field = distortion_map(tp, grid, rule)
    trailer: List[str] = []
    if ns.verify:
        total = float(field.sum()) * grid.cell_area
        trailer.append(f"# verify: integral {_fmt(total)}")
        if abs(total) > 1e-3:
            raise _VerifyFailure(
                f"distortion integral {total:g} not within 1e-3 of 0 (grid too small for this sigma?)"
            )
    rc = _run_config(ns, cfg, [("sigma", ns.sigma)])
    path = ns.out or "orbital_distortion.txt"
    digest, _ = _write(path, _dense([grid.samples, grid.extent, ns.sigma, tp.eps], field, trailer))
    _summary(rc, path, digest)
    return 0


def _cmd_sigma_max(ns, cfg, p) -> int:
    eps = p.beat_ratio
    rule = gauss_hermite(ns.quad_order)
    s_ds = sigma_max(eps, "dS12", rule=rule)
    s_di = sigma_max(eps, "dI12", rule=rule)
    trailer: List[str] = []
    if ns.verify:
        checks = []
        for which, star in (("dS12", s_ds), ("dI12", s_di)):
            idx = 0 if which == "dS12" else 1
            here = missing_information(star, eps, rule)[idx]
            near = max(
                missing_information(star * (1.0 + d), eps, rule)[idx] for d in (-0.05, 0.05)
            )
            checks.append(here >= near)
        trailer.append(f"# verify: local maxima {checks[0]} {checks[1]}")
        if not all(checks):
            raise _VerifyFailure("sigma-max did not land on a local maximum")
    rc = _run_config(ns, cfg, [])
    path = ns.out or "sigma_max.csv"
    digest, _ = _write(
        path,
        _csv("epsilon,sigma_max_dS,sigma_max_dI", [[eps, s_ds, s_di]], trailer),
    )
    _summary(rc, path, digest)
    return 0


def _cmd_zeeman(ns, cfg, p) -> int:
    if ns.level < 0:
        raise ValueError("--level must be non-negative")
    lines = ["kappa,ell,E_zeeman,n1,n2,E_cartesian,diff"]
    worst = 0.0
    for total in range(ns.level + 1):
        for n1 in range(total + 1):
            n2 = total - n1
            rm = mode_map(ModeIndex(n1, n2))
            e_z = zeeman_energy(p, rm)
            e_c = cartesian_energy(p, ModeIndex(n1, n2))
            diff = e_z - e_c
            worst = max(worst, abs(diff))
            lines.append(
                f"{rm.kappa},{rm.ell},{_fmt(e_z)},{n1},{n2},{_fmt(e_c)},{_fmt(diff)}"
            )
    if ns.verify:
        lines.append(f"# verify: max |diff| {_fmt(worst)}")
        if worst > 1e-12:
            raise _VerifyFailure(f"spectra disagree by {worst:g}")
    rc = _run_config(ns, cfg, [("level", ns.level)])
    path = ns.out or "zeeman.csv"
    digest, _ = _write(path, "\n".join(lines) + "\n")
    _summary(rc, path, digest)
    return 0


_COMMANDS = {
    "trajectory": _cmd_trajectory,
    "wigner-grid": _cmd_wigner_grid,
    "beat": _cmd_beat,
    "entropy": _cmd_entropy,
    "thermo": _cmd_thermo,
    "orbital-distortion": _cmd_orbital_distortion,
    "sigma-max": _cmd_sigma_max,
    "zeeman": _cmd_zeeman,
}


def run(argv: Sequence[str]) -> int:
    """Parse argv, execute one subcommand, return the exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:  # argparse already printed the usage message
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        cfg = _resolve_config(ns)
        params = derive_params(cfg)
        if ns.quad_order < 1 or ns.grid_n < 2 or ns.grid_x <= 0:
            raise ValueError("--quad-order >= 1, --grid-n >= 2, --grid-x > 0 required")
        return _COMMANDS[ns.subcommand](ns, cfg, params)
    except InvalidPhysics as exc:
        print(f"invalid physics: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GridCoverageError as exc:
        print(f"grid coverage: {exc}", file=sys.stderr)
        return 4
    except _VerifyFailure as exc:
        print(f"verify failed: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
