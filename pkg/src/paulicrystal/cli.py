"""
Command line interface: ``paulicrystal <subcommand> [options]``.

Subcommands: analytic, optimize, sweep, classify, density, compare.
All inputs and outputs are dimensionless (lengths in l0, energies in hbar omega).
Exit codes: 0 success, 1 I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import analytic, records
from .anneal import AnnealSchedule, RunRecord, derive_seed, multi_restart
from .energy import (
    ModelParams,
    as_configuration,
    config_to_csv,
    config_to_list,
    load_configuration,
    total_energy,
)
from .potentials import (
    DomainError,
    PairPotentialSpec,
    PotentialKind,
    oscillator_length,
    reduced_temperature,
    thermal_wavelength,
)
from .quantum import density_n3
from .structure import (
    ShellStructure,
    alignment_distance,
    classify_shells,
    parse_reference_key,
    reference_lookup,
    same_structure,
)

logger = logging.getLogger("paulicrystal")

_ANALYTIC_TEMPLATES = {
    3: analytic.TemplateKind.TRIANGLE3,
    4: analytic.TemplateKind.SQUARE4,
    5: analytic.TemplateKind.RING5,
    6: analytic.TemplateKind.PENTAGON_PLUS_CENTER6,
}


class UsageError(Exception):
    pass


# --- shared option groups ----------------------------------------------------

def _positive(kind):
    def parse(text):
        value = kind(text)
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value
    return parse


def _alpha_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return values


def _add_model(p, need_n=True):
    p.add_argument("--n", type=_positive(int), required=False, default=None if need_n else 1,
                   help="number of particles")
    p.add_argument("--potential", choices=[k.value for k in PotentialKind], default="fermion")
    p.add_argument("--coulomb-strength", type=_positive(float), default=1.0)
    p.add_argument("--confinement", type=_positive(float), default=1.0,
                   help="coefficient of the harmonic term (1 = physical trap)")


def _add_schedule(p):
    d = AnnealSchedule()
    p.add_argument("--restarts", type=_positive(int), default=20)
    p.add_argument("--seed", type=int, default=0, help="master seed (echoed in the output)")
    p.add_argument("--workers", type=_positive(int), default=1)
    p.add_argument("--schedule-t-initial", type=_positive(float), default=d.t_initial)
    p.add_argument("--schedule-t-final", type=_positive(float), default=d.t_final)
    p.add_argument("--schedule-cooling", type=float, default=d.cooling_factor)
    p.add_argument("--schedule-sweeps", type=_positive(int), default=d.sweeps_per_stage)
    p.add_argument("--schedule-step", type=_positive(float), default=d.step_initial)
    p.add_argument("--schedule-acceptance", type=float, default=d.step_adapt_target)


def _add_output(p, formats, default):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paulicrystal", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON file of option values; command line flags take precedence")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form / template minima for N = 3..6")
    p.add_argument("--n", type=int, required=False)
    p.add_argument("--alpha", type=_positive(float), default=1.0)
    p.add_argument("--physical", action="store_true",
                   help="also report thermal wavelength and oscillator length for --mass/--temperature/--omega")
    p.add_argument("--mass", type=_positive(float), help="particle mass in kg")
    p.add_argument("--temperature", type=_positive(float), help="temperature in K")
    p.add_argument("--omega", type=_positive(float), help="trap angular frequency in rad/s")
    _add_output(p, ["text", "json"], "text")

    p = sub.add_parser("optimize", help="simulated annealing with restarts")
    _add_model(p)
    p.add_argument("--alpha", type=_positive(float), default=1.0)
    _add_schedule(p)
    _add_output(p, ["json", "csv", "text"], "json")

    p = sub.add_parser("sweep", help="optimize over a grid of alpha values")
    _add_model(p)
    p.add_argument("--alphas", type=_alpha_list, required=False,
                   help="comma separated, strictly increasing alpha grid")
    _add_schedule(p)
    _add_output(p, ["csv", "json", "text"], "csv")

    p = sub.add_parser("classify", help="radial shell structure of a configuration file")
    p.add_argument("--input", type=Path, required=False)
    p.add_argument("--gap-factor", type=_positive(float), default=1.8)
    p.add_argument("--center-threshold", type=_positive(float), default=0.25)
    p.add_argument("--abs-gap", type=_positive(float), default=0.4)
    _add_output(p, ["text", "json"], "text")

    p = sub.add_parser("density", help="N=3 one-particle density on a grid")
    p.add_argument("--extent", type=_positive(float), default=3.0)
    p.add_argument("--resolution", type=int, default=121)
    _add_output(p, ["columns", "csv", "json"], "columns")

    p = sub.add_parser("compare", help="compare a run against another run or a reference")
    p.add_argument("--a", dest="run_a", required=False, help="run record or configuration file")
    p.add_argument("--b", dest="run_b", required=False,
                   help="run record / configuration file, or a reference key such as pauli:6")
    p.add_argument("--tol", type=_positive(float), default=1e-3)
    _add_output(p, ["text", "json"], "text")
    parser.subcommands = sub.choices
    return parser


# --- helpers -----------------------------------------------------------------

def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        records.write_text(args.out, text)


def _spec_from_args(args, alpha: float) -> PairPotentialSpec:
    return PairPotentialSpec(PotentialKind(args.potential), alpha=alpha,
                             coulomb_strength=args.coulomb_strength)


def _schedule_from_args(args) -> AnnealSchedule:
    return AnnealSchedule(
        t_initial=args.schedule_t_initial,
        t_final=args.schedule_t_final,
        cooling_factor=args.schedule_cooling,
        sweeps_per_stage=args.schedule_sweeps,
        step_initial=args.schedule_step,
        step_adapt_target=args.schedule_acceptance,
    )


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


# --- subcommands -------------------------------------------------------------

def analytic_result(n: int, alpha: float) -> dict:
    if n not in _ANALYTIC_TEMPLATES:
        raise UsageError(f"no analytic template for N={n} (available: 3, 4, 5, 6)")
    kind = _ANALYTIC_TEMPLATES[n]
    result = {"n": n, "alpha": alpha, "template": kind.value}
    if n == 3:
        radius = analytic.triangle_radius(alpha)
        result["method"] = "closed_form"
    elif n == 4:
        z, radius = analytic.square_solution(alpha)
        result["method"] = "closed_form"
        result["z"] = z
    else:
        radius, _ = analytic.minimize_template(alpha, kind)
        result["method"] = "golden_section"
    geom = analytic.TemplateGeometry(kind, radius)
    result["radius"] = radius
    result["radius_3dp"] = round(radius, 3)
    result["energy"] = analytic.template_energy(alpha, geom)
    result["config"] = config_to_list(geom.realize())
    result["shells"] = classify_shells(geom.realize()).to_dict()
    return result


def cmd_analytic(args) -> int:
    _require(args, "n")
    result = analytic_result(args.n, args.alpha)
    if args.physical:
        _require(args, "mass", "temperature", "omega")
        lam = thermal_wavelength(args.mass, args.temperature)
        l0 = oscillator_length(args.mass, args.omega)
        result["physical"] = {
            "thermal_wavelength_m": lam,
            "oscillator_length_m": l0,
            "alpha_from_temperature": reduced_temperature(args.temperature, args.omega),
            "lambda_over_l0": lam / l0,
        }
    if args.format == "json":
        _emit(args, records.dumps(records.make_document("analytic", result)))
    else:
        lines = [
            f"N = {result['n']}  alpha = {result['alpha']:g}  template = {result['template']}",
            f"radius r/l0 = {result['radius_3dp']:.3f}  ({result['radius']:.10f})",
            f"energy E/hbar-omega = {result['energy']:.10f}",
        ]
        if "z" in result:
            lines.append(f"z = {result['z']:.10f}")
        if "physical" in result:
            ph = result["physical"]
            lines.append(f"lambda = {ph['thermal_wavelength_m']:.6e} m  l0 = {ph['oscillator_length_m']:.6e} m")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _run(args, alpha: float, seed: int) -> RunRecord:
    params = ModelParams(args.n, _spec_from_args(args, alpha), args.confinement)
    return multi_restart(params, _schedule_from_args(args), args.restarts, seed, workers=args.workers)


def cmd_optimize(args) -> int:
    _require(args, "n")
    if args.n < 2:
        raise UsageError("optimize needs --n >= 2")
    record = _run(args, args.alpha, args.seed)
    if args.format == "csv":
        _emit(args, config_to_csv(record.best_config))
    elif args.format == "text":
        _emit(args, f"seed = {record.master_seed}\nshells = {record.shells.label}\n"
                    f"best energy = {record.best_energy:.12f}\n")
    else:
        _emit(args, records.dumps(records.make_document("run-record", record.to_dict())))
    return 0


def cmd_sweep(args) -> int:
    _require(args, "n", "alphas")
    alphas = args.alphas
    if not alphas:
        raise UsageError("empty alpha grid")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise UsageError("alpha grid must be strictly increasing")
    if any(not a > 0 for a in alphas):
        raise UsageError("alpha values must be positive")
    if args.n < 2:
        raise UsageError("sweep needs --n >= 2")
    rows = []
    for k, alpha in enumerate(alphas):
        seed = derive_seed(args.seed, k)
        rec = _run(args, alpha, seed)
        rows.append({
            "alpha": alpha,
            "seed": seed,
            "best_energy": rec.best_energy,
            "shells": rec.shells.label,
            "shell_radii": list(rec.shells.shell_radii),
        })
    if args.format == "json":
        result = {"n": args.n, "potential": args.potential, "master_seed": args.seed,
                  "restarts": args.restarts, "rows": rows}
        _emit(args, records.dumps(records.make_document("sweep", result)))
    elif args.format == "text":
        _emit(args, "".join(f"alpha={r['alpha']:g} {r['shells']} E={r['best_energy']:.10f}\n" for r in rows))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "seed", "best_energy", "shells"])
        for r in rows:
            writer.writerow([repr(r["alpha"]), r["seed"], repr(r["best_energy"]), r["shells"]])
        _emit(args, buf.getvalue())
    return 0


def cmd_classify(args) -> int:
    _require(args, "input")
    config = _load_any_configuration(args.input)
    shells = classify_shells(config, args.gap_factor, args.center_threshold, args.abs_gap)
    if args.format == "json":
        _emit(args, records.dumps(records.make_document("shells", shells.to_dict())))
    else:
        _emit(args, shells.label + "\n")
    return 0


def cmd_density(args) -> int:
    if args.resolution < 3:
        raise UsageError("--resolution must be >= 3")
    grid = density_n3(args.extent, args.resolution)
    if args.format == "csv":
        _emit(args, grid.to_csv())
    elif args.format == "json":
        result = {"extent": grid.extent, "resolution": grid.resolution,
                  "integral": grid.integral(), "values": grid.values.tolist()}
        _emit(args, records.dumps(records.make_document("density", result)))
    else:
        _emit(args, grid.to_columns())
    return 0


def _load_any_configuration(path) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = json.loads(path.read_text())
        if isinstance(data, dict) and "result" in data:
            result = data["result"]
            key = "best_config" if "best_config" in result else "config"
            return as_configuration(result[key])
    return load_configuration(path)


def _side(spec: str):
    """A compare operand: ``(label, configuration or None, ShellStructure)``."""
    if ":" in spec and not Path(spec).exists():
        n, kind = parse_reference_key(spec)
        ref = reference_lookup(n, kind)
        if ref is None:
            raise UsageError(f"no reference entry for {spec}")
        return spec, None, ref
    config = _load_any_configuration(spec)
    return spec, config, classify_shells(config)


def compare_report(a, b, tol: float = 1e-3) -> dict:
    label_a, conf_a, sh_a = a
    label_b, conf_b, sh_b = b
    if sh_a.n_particles != sh_b.n_particles:
        raise UsageError(f"particle numbers differ: {sh_a.n_particles} vs {sh_b.n_particles}")
    report = {
        "a": label_a,
        "b": label_b,
        "n": sh_a.n_particles,
        "shells_a": sh_a.label,
        "shells_b": sh_b.label,
        "occupancy_match": sh_a.occupancies == sh_b.occupancies,
        "outer_radius_a": sh_a.shell_radii[-1] if sh_a.shell_radii else None,
        "outer_radius_b": sh_b.shell_radii[-1] if sh_b.shell_radii else None,
        "radius_discrepancy_percent": None,
        "same_structure": None,
    }
    if report["outer_radius_a"] is not None and report["outer_radius_b"]:
        ra, rb = report["outer_radius_a"], report["outer_radius_b"]
        report["radius_discrepancy_percent"] = 100.0 * abs(rb - ra) / rb
    if conf_a is not None and conf_b is not None:
        report["same_structure"] = same_structure(conf_a, conf_b, tol)
        report["alignment_distance"] = alignment_distance(conf_a, conf_b)
    return report


def cmd_compare(args) -> int:
    _require(args, "run_a", "run_b")
    report = compare_report(_side(args.run_a), _side(args.run_b), args.tol)
    if args.format == "json":
        _emit(args, records.dumps(records.make_document("compare", report)))
    else:
        lines = [f"shells: {report['shells_a']} vs {report['shells_b']}"
                 + ("" if report["occupancy_match"] else "  (occupancy mismatch)")]
        if report["radius_discrepancy_percent"] is not None:
            lines.append(f"outer radius: {report['outer_radius_a']:.4f} vs {report['outer_radius_b']:.4f}"
                         f"  discrepancy {report['radius_discrepancy_percent']:.2f}%")
        if report["same_structure"] is not None:
            lines.append(f"same structure (tol {args.tol:g}): {report['same_structure']}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


COMMANDS = {
    "analytic": cmd_analytic,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "classify": cmd_classify,
    "density": cmd_density,
    "compare": cmd_compare,
}


def _apply_config_file(parser, argv):
    """Re-parse with defaults taken from ``--config``; explicit flags still win."""
    args = parser.parse_args(argv)
    if args.config is None:
        return args
    data = json.loads(Path(args.config).read_text())
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    sub = parser.subcommands[args.command]
    known = {a.dest for a in sub._actions}
    unknown = set(data) - known - {"command"}
    if unknown:
        raise UsageError("unknown config keys: " + ", ".join(sorted(unknown)))
    for action in sub._actions:
        if action.dest in data:
            value = data[action.dest]
            if isinstance(value, str) and action.type is not None:
                value = action.type(value)
            elif action.dest in ("input", "out") and value is not None:
                value = Path(value)
            sub.set_defaults(**{action.dest: value})
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _apply_config_file(parser, argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"paulicrystal: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"paulicrystal: error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"paulicrystal: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"paulicrystal: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
