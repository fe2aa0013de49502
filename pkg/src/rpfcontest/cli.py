"""Command-line surface for batch runs and table/curve emission.

Subcommands: cutoff, axioms, equilibrium, curves, design, dissipation,
simulate.  Inputs are JSON manifests (--spec); outputs are JSON records on
stdout plus optional CSV/JSON files under --out.  All numbers serialize
with 15 significant digits, runs are deterministic given manifest + seed,
and existing output files are never overwritten without --force.

Exit codes: 0 success (all checks passed), 1 axiom failure, 2 input error,
3 domain condition (budget not binding).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import fields as dc_fields
from pathlib import Path

import numpy as np

from . import axioms as ax
from . import design as dz
from . import fixtures
from .distributions import StudentT, Normal, from_spec as noise_from_spec
from .engine import family_from_spec, solve_cutoff
from .equilibrium import ContestSpec, foc_equilibrium, soc_check, verify_equilibrium
from .errors import BudgetNotBindingError, ContestError, InputFormatError
from .measures import EffortMeasure
from .simulate import SimConfig, convergence_table, simulate

EXIT_OK = 0
EXIT_AXIOM_FAIL = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3


def _sig15(obj):
    """Round every float in a JSON-like structure to 15 significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _sig15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sig15(v) for v in obj]
    return obj


def _emit(obj) -> None:
    print(json.dumps(_sig15(obj), indent=2))


def _load_spec(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputFormatError(f"spec file not found: {path}")
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON: {exc}")


def _out_path(out_dir: str, name: str, force: bool) -> Path:
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    path = d / name
    if path.exists() and not force:
        raise InputFormatError(f"refusing to overwrite {path} (pass --force)")
    return path


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([f"{v:.15g}" if isinstance(v, float) else v for v in row])


def _family_from_manifest(spec: dict):
    if "family" in spec:
        return family_from_spec(spec["family"])
    if "noise" in spec:
        return family_from_spec({"kind": "additive", "noise": spec["noise"]})
    raise InputFormatError("manifest needs a 'family' or 'noise' object")


def _measure_from_manifest(spec: dict) -> EffortMeasure:
    m = spec.get("measure")
    if m is None:
        raise InputFormatError("manifest needs a 'measure' object")
    if isinstance(m, str):
        if m.endswith(".csv"):
            return EffortMeasure.from_csv(m)
        return EffortMeasure.from_json(Path(m).read_text())
    return EffortMeasure.from_dict(m)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_cutoff(args) -> int:
    spec = _load_spec(args.spec)
    fam = _family_from_manifest(spec)
    p = _measure_from_manifest(spec)
    k = float(spec["k"])
    xtol = args.tol if args.tol is not None else 1e-12
    res = solve_cutoff(fam, p, k, xtol=xtol)
    _emit(res.to_dict())
    return EXIT_OK


def _csf_from_manifest(spec: dict) -> ax.BlackBoxCSF:
    c = spec.get("csf", spec)
    k = float(c.get("k", spec.get("k", 0.3)))
    kind = c.get("kind", "rpf")
    if kind == "rpf":
        fam = _family_from_manifest(c if ("family" in c or "noise" in c) else spec)
        return ax.rpf_csf(fam, k)
    if kind == "fixture":
        name = c.get("name")
        if name not in fixtures.FIXTURES:
            raise InputFormatError(f"unknown fixture {name!r}; have {sorted(fixtures.FIXTURES)}")
        return fixtures.FIXTURES[name](k)
    raise InputFormatError(f"unknown csf kind {kind!r}")


def _sampler_from_manifest(spec: dict, args) -> ax.SamplerConfig:
    raw = dict(spec.get("sampler", {}))
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.tol is not None:
        raw["tolerance"] = args.tol
    allowed = {f.name for f in dc_fields(ax.SamplerConfig)}
    unknown = set(raw) - allowed
    if unknown:
        raise InputFormatError(f"unknown sampler fields: {sorted(unknown)}")
    for tup in ("ladder", "ladder_slack"):
        if tup in raw:
            raw[tup] = tuple(raw[tup])
    return ax.SamplerConfig(**raw)


def _render_report(report: ax.AxiomReport) -> None:
    width = max(len(r.axiom) for r in report.results)
    print(f"# axiom checks for {report.csf_name} (k={report.k:g}, seed={report.seed})",
          file=sys.stderr)
    for r in report.results:
        mark = "pass" if r.passed else "FAIL"
        line = f"{r.axiom:<{width}}  {mark}  samples={r.n_checked}/{r.n_samples}"
        if r.note:
            line += f"  [{r.note}]"
        if r.witness is not None:
            keys = ("violation", "e", "e_prime", "e_bar", "a")
            bits = [f"{k}={r.witness[k]:.6g}" for k in keys
                    if k in r.witness and isinstance(r.witness[k], float)]
            line += "  witness(" + ", ".join(bits) + ")"
        print(line, file=sys.stderr)


def cmd_axioms(args) -> int:
    spec = _load_spec(args.spec)
    if "winrates_csv" in spec:
        measures = {
            mid: EffortMeasure.from_dict(m)
            for mid, m in _load_spec(spec["measures_json"]).items()
        }
        rows = []
        with open(spec["winrates_csv"], newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    rows.append((float(row[0]), row[1].strip(), float(row[2])))
                except (ValueError, IndexError):
                    if lineno == 1:
                        continue
                    raise InputFormatError(f"{spec['winrates_csv']}:{lineno}: bad row {row!r}")
        report = ax.audit_tabulated(rows, measures, float(spec["k"]))
    else:
        csf = _csf_from_manifest(spec)
        cfg = _sampler_from_manifest(spec, args)
        names = spec.get("axioms", "structural")
        if names == "structural":
            names = ax.STRUCTURAL_AXIOMS
        elif names == "shifts":
            names = ax.SHIFT_AXIOMS
        elif names == "all":
            names = ax.AXIOM_NAMES
        report = ax.run_suite(csf, cfg, names)
    _render_report(report)
    _emit(report.to_dict())
    if args.out:
        path = _out_path(args.out, "axiom_report.json", args.force)
        path.write_text(json.dumps(_sig15(report.to_dict()), indent=2))
    return EXIT_OK if report.all_passed else EXIT_AXIOM_FAIL


def cmd_equilibrium(args) -> int:
    spec = ContestSpec.from_dict(_load_spec(args.spec))
    e_star = foc_equilibrium(spec)
    soc = soc_check(spec)
    tol = args.tol if args.tol is not None else 1e-4
    verdict = verify_equilibrium(spec, e_star, tol=tol)
    rhs = spec.noise.pdf(spec.noise.quantile(1.0 - spec.k)) * spec.prize_utility()
    out = {
        "e_star": e_star,
        "foc_residual": float(spec.cost.derivative(e_star)) - float(rhs),
        "soc_margin": soc.margin,
        "soc_passed": soc.passed,
        "verified": verdict.verified,
        "best_response_gap": verdict.best_response_gap,
        "equilibrium_payoff": verdict.equilibrium_payoff,
    }
    if not soc.passed:
        out["warning"] = "curvature condition failed; first-order point may not be an equilibrium"
    _emit(out)
    return EXIT_OK


def cmd_curves(args) -> int:
    if not args.out:
        raise InputFormatError("curves needs --out <dir>")
    grid = dz.default_k_grid()
    rows = {
        "normal.csv": dz.incentive_curve(Normal(), grid),
        "student_t3.csv": dz.incentive_curve(StudentT(3.0), grid),
        "student_t1.csv": dz.incentive_curve(StudentT(1.0), grid),
    }
    written = []
    for name, curve in rows.items():
        path = _out_path(args.out, name, args.force)
        _write_csv(path, ("k", "value"), [(float(k), float(v)) for k, v in curve])
        written.append(str(path))
    _emit({"written": written, "points": int(grid.size)})
    return EXIT_OK


def _design_from_manifest(spec: dict) -> dz.DesignSpec:
    from .equilibrium import cost_from_spec, utility_from_spec
    grid_spec = spec.get("k_grid")
    if grid_spec is None:
        grid = dz.default_k_grid()
    elif isinstance(grid_spec, dict):
        grid = dz.default_k_grid(int(grid_spec.get("n", 512)),
                                 float(grid_spec.get("lo", 0.005)),
                                 float(grid_spec.get("hi", 0.995)))
    else:
        grid = np.asarray(grid_spec, dtype=float)
    return dz.DesignSpec(
        B=float(spec["B"]),
        noise=noise_from_spec(spec.get("noise", {"kind": "normal"})),
        utility=utility_from_spec(spec.get("utility", {"kind": "linear"})),
        cost=cost_from_spec(spec.get("cost", {"kind": "power"})),
        k_grid=grid,
    )


def cmd_design(args) -> int:
    spec = _design_from_manifest(_load_spec(args.spec))
    curve = dz.effort_curve(spec)
    best = dz.optimal_k(spec)
    top_half = dz.check_top_half_suboptimal(spec)
    if args.out:
        path = _out_path(args.out, "effort_curve.csv", args.force)
        _write_csv(path, ("k", "e_star"), [(float(k), float(e)) for k, e in curve])
    _emit({"optimal": best.to_dict(), "top_half_check": top_half.to_dict()})
    return EXIT_OK


def cmd_dissipation(args) -> int:
    spec = _load_spec(args.spec)
    noise = noise_from_spec(spec.get("noise", {"kind": "normal"}))
    V, A, k = float(spec["V"]), float(spec.get("A", 1.0)), float(spec["k"])
    ratio = dz.rent_dissipation_ratio(V, A, k, noise)
    threshold = dz.dissipation_threshold(A, k, noise)
    if ratio > 1.0:
        regime = "over-dissipation"
    elif ratio < 1.0:
        regime = "under-dissipation"
    else:
        regime = "full dissipation"
    _emit({"ratio": ratio, "threshold_V": threshold, "regime": regime})
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = _load_spec(args.spec)
    fam = _family_from_manifest(spec)
    p = _measure_from_manifest(spec).discretize()
    seed = args.seed if args.seed is not None else int(spec.get("seed", 0))
    cfg = SimConfig(n=int(spec["n"]), seed=seed, fam=fam, p=p,
                    k=float(spec["k"]), replications=int(spec.get("replications", 1)))
    if "convergence" in spec:
        rows = convergence_table(cfg, ns=[int(n) for n in spec["convergence"]])
        if args.out:
            path = _out_path(args.out, "convergence.csv", args.force)
            _write_csv(path, ("n", "mean_err", "sd"),
                       [(r["n"], r["mean_err"], r["sd"]) for r in rows])
        _emit({"convergence": rows})
        return EXIT_OK
    res = simulate(cfg)
    if args.out:
        path = _out_path(args.out, "winrates.csv", args.force)
        _write_csv(path, ("atom_e", "empirical_W", "model_W", "abs_err"), res.csv_rows())
    _emit(res.to_dict())
    return EXIT_OK


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpfcontest",
        description="Continuum-contest success functions: cutoffs, axioms, equilibria, design",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "cutoff": (cmd_cutoff, "solve the market-clearing threshold for a measure"),
        "axioms": (cmd_axioms, "run the falsification suite against a success function"),
        "equilibrium": (cmd_equilibrium, "solve and verify the symmetric equilibrium"),
        "curves": (cmd_curves, "emit incentive curves for normal and Student-t noise"),
        "design": (cmd_design, "sweep winner fractions and locate the optimum"),
        "dissipation": (cmd_dissipation, "rent-dissipation ratio and prize threshold"),
        "simulate": (cmd_simulate, "finite-population Monte Carlo comparison"),
    }
    for name, (fn, help_text) in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", help="JSON manifest file")
        p.add_argument("--out", help="output directory for CSV/JSON files")
        p.add_argument("--seed", type=int, default=None, help="RNG seed override")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        p.add_argument("--force", action="store_true", help="allow overwriting outputs")
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    needs_spec = args.command != "curves"
    try:
        if needs_spec and not args.spec:
            raise InputFormatError(f"{args.command} needs --spec <file>")
        return args.func(args)
    except BudgetNotBindingError as exc:
        print(f"error: budget not binding: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InputFormatError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
