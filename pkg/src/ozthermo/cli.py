"""Batch command-line front end.

Subcommands: ``eos``, ``mix``, ``msa``, ``oz-solve``, ``sweep``.  System
definitions come from a line-oriented key=value file with one
``[species]`` block per species (keys sigma, rho, z), or the same
schema as JSON via ``--json``.  Output is RFC-4180-style CSV (comma,
LF, header row, 12 significant digits) written to ``--out`` or stdout;
diagnostics go to stderr.  ``--plot`` additionally renders a PNG next
to the CSV.

Exit codes: 0 success, 2 configuration error, 3 validation error,
4 solver failure.  Identical configuration yields byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bmcsl, msa, oz_solver, percus_yevick as py
from .core import Species, make_mixture, moments
from .errors import (
    ConfigParseError,
    OZThermoError,
    SolverError,
    ValidationError,
)

SWEEPABLE = ("eos", "mix", "msa", "oz-solve")

EOS_HEADER = "eta,z_compressibility,z_virial,z_carnahan_starling,contact_value"
MIX_HEADER = "species,sigma,rho,eta,z_bmcsl,a_ex,ln_gamma_hs"
MSA_HEADER = ("species,sigma,rho,z,alpha_sq,gamma,p_n,omega,n_i,a_i,"
              "delta_e,delta_a,ln_gamma_elec,ln_gamma_hs,ln_gamma_total")
OZ_HEADER = ("eta,grid_n,grid_dr,iterations,final_change,"
             "contact_numeric,contact_analytic,contact_rel_err,"
             "s0_inv_numeric,s0_inv_analytic,s0_inv_rel_err")


@dataclass
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    command: str = ""


@dataclass
class RunConfig:
    command: str
    species: list[Species] = field(default_factory=list)
    alpha_sq: float = 0.0
    label: str = ""
    eta: float | None = None
    sweep: SweepSpec | None = None
    out: Path | None = None
    dump_table: Path | None = None
    grid_n: int = 4096
    grid_dr: float | None = None
    tol: float | None = None
    allow_neutral: bool = False
    plot: bool = False


# -- configuration parsing ---------------------------------------------------

def _coerce(key, value, kind):
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigParseError(f"key '{key}': cannot read {value!r}") from exc


def parse_config_text(text: str) -> dict:
    """Parse the line-oriented key=value format into the JSON schema."""
    data: dict = {"species": []}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name == "species":
                section = {}
                data["species"].append(section)
            elif name == "sweep":
                section = {}
                data["sweep"] = section
            else:
                raise ConfigParseError(f"line {lineno}: unknown section "
                                       f"[{name}]")
            continue
        if "=" not in line:
            raise ConfigParseError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        target = data if section is None else section
        target[key] = value
    return data


def load_config(path, as_json: bool) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read config {path}: {exc}") from exc
    if as_json:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigParseError(f"invalid JSON in {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigParseError("JSON config must be an object")
        data.setdefault("species", [])
        return data
    return parse_config_text(text)


def _species_from(data) -> list[Species]:
    out = []
    for idx, entry in enumerate(data.get("species", [])):
        if not isinstance(entry, dict):
            raise ConfigParseError(f"species {idx}: expected a mapping")
        try:
            sigma = _coerce("sigma", entry["sigma"], float)
            rho = _coerce("rho", entry["rho"], float)
        except KeyError as exc:
            raise ConfigParseError(
                f"species {idx}: missing key {exc.args[0]}") from exc
        z = _coerce("z", entry.get("z", 0), lambda v: int(float(v)))
        out.append(Species(sigma=sigma, rho=rho, z=z))
    return out


def _sweep_from(data, args) -> SweepSpec | None:
    raw = dict(data.get("sweep") or {})
    for key, val in (("variable", args.variable), ("start", args.start),
                     ("stop", args.stop), ("steps", args.steps),
                     ("command", getattr(args, "inner_command", None))):
        if val is not None:
            raw[key] = val
    if not raw:
        return None
    try:
        spec = SweepSpec(variable=str(raw["variable"]).lower(),
                         start=_coerce("start", raw["start"], float),
                         stop=_coerce("stop", raw["stop"], float),
                         steps=_coerce("steps", raw["steps"], int),
                         command=str(raw.get("command", "")).lower())
    except KeyError as exc:
        raise ConfigParseError(
            f"sweep: missing key {exc.args[0]}") from exc
    if spec.variable not in ("eta", "alpha_sq"):
        raise ConfigParseError(f"sweep: unknown variable '{spec.variable}'")
    if spec.steps < 2:
        raise ConfigParseError("sweep: steps must be >= 2")
    if not spec.start < spec.stop:
        raise ConfigParseError("sweep: start must be < stop")
    return spec


def build_config(args) -> RunConfig:
    data = load_config(args.config, args.json) if args.config else \
        {"species": []}
    cfg = RunConfig(command=args.command)
    cfg.species = _species_from(data)
    cfg.label = str(data.get("label", ""))
    cfg.alpha_sq = _coerce("alpha_sq", data.get("alpha_sq", 0.0), float)
    eta = args.eta if args.eta is not None else data.get("eta")
    cfg.eta = None if eta is None else _coerce("eta", eta, float)
    cfg.grid_n = args.grid_n if args.grid_n is not None else \
        _coerce("grid_n", data.get("grid_n", 4096), int)
    grid_dr = args.grid_dr if args.grid_dr is not None else \
        data.get("grid_dr")
    cfg.grid_dr = None if grid_dr is None else \
        _coerce("grid_dr", grid_dr, float)
    tol = args.tol if args.tol is not None else data.get("tol")
    cfg.tol = None if tol is None else _coerce("tol", tol, float)
    cfg.out = Path(args.out) if args.out else None
    cfg.dump_table = Path(args.dump_table) \
        if getattr(args, "dump_table", None) else None
    cfg.allow_neutral = bool(getattr(args, "allow_neutral", False))
    cfg.plot = bool(args.plot)
    if args.command == "sweep":
        cfg.sweep = _sweep_from(data, args)
        if cfg.sweep is None:
            raise ConfigParseError("sweep: no range given "
                                   "(--variable/--start/--stop/--steps)")
        if cfg.sweep.command not in SWEEPABLE:
            raise ConfigParseError(
                f"sweep: inner command must be one of {SWEEPABLE}")
    if cfg.plot and cfg.out is None:
        raise ConfigParseError("--plot requires --out")
    return cfg


# -- row builders ------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def rows_to_csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _require_eta(cfg: RunConfig) -> float:
    if cfg.eta is None:
        raise ConfigParseError(f"{cfg.command}: eta is required "
                               "(--eta or config)")
    return cfg.eta


def _require_mixture(cfg: RunConfig):
    if not cfg.species:
        raise ConfigParseError(f"{cfg.command}: a [species] system "
                               "definition is required (--config)")
    return make_mixture(cfg.species, alpha_sq=cfg.alpha_sq, label=cfg.label)


def eos_rows(eta: float):
    return [[eta, py.z_compressibility(eta), py.z_virial(eta),
             py.z_carnahan_starling(eta), py.contact_value(eta)]]


def mix_rows(mixture):
    eta = moments(mixture).eta
    thermo = bmcsl.mixture_thermo(mixture)
    return [[i, sp.sigma, sp.rho, eta, thermo.z_bmcsl,
             thermo.a_ex_per_particle, thermo.ln_gamma_hs[i]]
            for i, sp in enumerate(mixture.species)]


def msa_rows(mixture, allow_neutral: bool, tol: float | None):
    if not allow_neutral:
        msa.require_charged(mixture)
    sol = msa.solve_gamma(mixture, tol=tol or 1e-12)
    delta_e = msa.internal_energy(sol)
    delta_a = msa.helmholtz_charging(mixture) if mixture.is_charged else 0.0
    ln_elec = msa.ln_gamma_elec_all(sol)
    ln_hs = bmcsl.ln_gamma_hs_all(mixture)
    return [[i, sp.sigma, sp.rho, sp.z, mixture.alpha_sq, sol.gamma,
             sol.p_n, sol.omega, sol.n_coeff[i], sol.a_coeff[i],
             delta_e, delta_a, ln_elec[i], ln_hs[i], ln_elec[i] + ln_hs[i]]
            for i, sp in enumerate(mixture.species)]


def oz_rows(eta: float, cfg: RunConfig):
    grid = oz_solver.RadialGrid(n=cfg.grid_n,
                                dr=cfg.grid_dr if cfg.grid_dr else 0.01)
    table = oz_solver.solve_py_numeric(eta, grid=grid, tol=cfg.tol or 1e-8)
    contact_num = oz_solver.contact_extrapolate(table)
    contact_ref = py.contact_value(eta)
    s0_num = oz_solver.inverse_structure_factor_zero(table)
    s0_ref = py.solve_py_single(eta).q_hat_zero ** 2
    row = [eta, grid.n, grid.dr, table.iterations, table.final_change,
           contact_num, contact_ref, abs(contact_num / contact_ref - 1.0),
           s0_num, s0_ref, abs(s0_num / s0_ref - 1.0)]
    return [row], table


def _scaled_to_eta(mixture, eta_target: float):
    eta_now = moments(mixture).eta
    if eta_now <= 0:
        raise ValidationError("cannot sweep eta: current packing is zero")
    scale = eta_target / eta_now
    return make_mixture(
        [Species(s.sigma, s.rho * scale, s.z) for s in mixture.species],
        alpha_sq=mixture.alpha_sq, label=mixture.label)


def sweep_rows(cfg: RunConfig):
    spec = cfg.sweep
    values = np.linspace(spec.start, spec.stop, spec.steps)
    inner = spec.command

    def one(value):
        if inner == "eos":
            return eos_rows(float(value))
        if inner == "oz-solve":
            return oz_rows(float(value), cfg)[0]
        mixture = _require_mixture(cfg)
        if spec.variable == "eta":
            mixture = _scaled_to_eta(mixture, float(value))
        else:
            mixture = make_mixture(mixture.species, alpha_sq=float(value),
                                   label=mixture.label)
        if inner == "mix":
            return mix_rows(mixture)
        return msa_rows(mixture, cfg.allow_neutral, cfg.tol)

    if inner in ("eos", "oz-solve") and spec.variable != "eta":
        raise ConfigParseError(f"sweep: {inner} only sweeps eta")

    workers = max(1, int(os.environ.get("OZ_THERMO_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(one, values))
    else:
        chunks = [one(v) for v in values]
    return [row for chunk in chunks for row in chunk]


def _sweep_header(inner: str) -> str:
    return {"eos": EOS_HEADER, "mix": MIX_HEADER, "msa": MSA_HEADER,
            "oz-solve": OZ_HEADER}[inner]


# -- orchestration -----------------------------------------------------------

def _emit(cfg: RunConfig, header: str, rows, table=None) -> None:
    csv_text = rows_to_csv(header, rows)
    if cfg.out is not None:
        cfg.out.write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if cfg.plot:
        from . import plots
        png = cfg.out.with_suffix(".png")
        command = cfg.sweep.command if cfg.command == "sweep" else cfg.command
        if command == "eos":
            plots.render_eos(rows, png)
        elif command == "mix":
            plots.render_mix(rows, png)
        elif command == "msa":
            plots.render_msa(rows, png)
        elif command == "oz-solve":
            if table is not None:
                plots.render_correlation(table, png)
            else:
                plots.render_oz_sweep(rows, png)


def run(cfg: RunConfig) -> int:
    """Execute one validated configuration.  Returns the exit status."""
    if cfg.command == "eos":
        _emit(cfg, EOS_HEADER, eos_rows(_require_eta(cfg)))
    elif cfg.command == "mix":
        _emit(cfg, MIX_HEADER, mix_rows(_require_mixture(cfg)))
    elif cfg.command == "msa":
        _emit(cfg, MSA_HEADER,
              msa_rows(_require_mixture(cfg), cfg.allow_neutral, cfg.tol))
    elif cfg.command == "oz-solve":
        rows, table = oz_rows(_require_eta(cfg), cfg)
        if cfg.dump_table is not None:
            oz_solver.write_table_csv(table, cfg.dump_table)
        _emit(cfg, OZ_HEADER, rows, table=table)
    elif cfg.command == "sweep":
        _emit(cfg, _sweep_header(cfg.sweep.command), sweep_rows(cfg))
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigParseError(f"unknown command {cfg.command}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ozthermo",
        description="Hard-sphere / primitive-model thermodynamics from "
                    "analytic OZ-equation solutions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="system definition file")
        p.add_argument("--json", action="store_true",
                       help="config file is JSON")
        p.add_argument("--out", help="write CSV here (default stdout)")
        p.add_argument("--plot", action="store_true",
                       help="render a PNG figure next to --out")
        p.add_argument("--eta", type=float, default=None,
                       help="packing fraction")
        p.add_argument("--grid-n", type=int, default=None, dest="grid_n")
        p.add_argument("--grid-dr", type=float, default=None, dest="grid_dr")
        p.add_argument("--tol", type=float, default=None)

    p_eos = sub.add_parser("eos", help="single-component PY equations "
                                       "of state")
    common(p_eos)
    p_mix = sub.add_parser("mix", help="hard-sphere mixture thermodynamics")
    common(p_mix)
    p_msa = sub.add_parser("msa", help="primitive-model electrolyte (MSA)")
    common(p_msa)
    p_msa.add_argument("--allow-neutral", action="store_true",
                       help="emit Gamma = 0 rows for uncharged systems")
    p_oz = sub.add_parser("oz-solve", help="numeric OZ/PY solve plus "
                                           "analytic comparison")
    common(p_oz)
    p_oz.add_argument("--dump-table", default=None,
                      help="also write the full r,c,h,g table here")
    p_sweep = sub.add_parser("sweep", help="repeat a command over a range")
    common(p_sweep)
    p_sweep.add_argument("--command", dest="inner_command",
                         choices=SWEEPABLE, default=None)
    p_sweep.add_argument("--variable", choices=("eta", "alpha_sq"),
                         default=None)
    p_sweep.add_argument("--start", type=float, default=None)
    p_sweep.add_argument("--stop", type=float, default=None)
    p_sweep.add_argument("--steps", type=int, default=None)
    p_sweep.add_argument("--allow-neutral", action="store_true")
    p_sweep.add_argument("--dump-table", default=None)
    return parser


def _ensure_sweep_defaults(args) -> None:
    for name in ("variable", "start", "stop", "steps", "inner_command",
                 "allow_neutral", "dump_table"):
        if not hasattr(args, name):
            setattr(args, name, None)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _ensure_sweep_defaults(args)
    try:
        return run(build_config(args))
    except ConfigParseError as exc:
        print(f"ozthermo: config error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"ozthermo: validation error: {exc}", file=sys.stderr)
        return 3
    except SolverError as exc:
        print(f"ozthermo: solver error: {exc}", file=sys.stderr)
        return 4
    except OZThermoError as exc:  # pragma: no cover - safety net
        print(f"ozthermo: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
