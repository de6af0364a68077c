#!/usr/bin/env python

"""
arcverb command-line tool

Usage:
  arcverb <command> [options]

Commands:
  verify-onearc   Closed-form identity checks of the one-arc model
  mfunc           Build M(z, D) and check its structure
  measure         Recover the measure of M(z, D)
  verblunsky      Verblunsky coefficients by both extraction paths
  pipeline        All of the above plus the Schur-step closure check
  sweep           Iterate a divisor grid over D(E)

Options:
  --config=<file>     YAML parameter file
  --arcs=<file>       Arc file (JSON)
  --divisor=<file>    Divisor file (JSON)
  -N <int>            Number of parameters [default: 20]
  --level=<int>       Tanh-sinh level [default: 8]
  --radius=<float>    Schur sampling radius [default: 0.5]
  --samples=<int>     Random points for identity checks [default: 500]
  --seed=<int>        Seed for randomized checks [default: 42]
  --r=<float ...>     One-arc parameters [default: 0.5]
  --emit=<path>       Table output: directory for CSV, or a .h5/.hdf5 file
  --report=<file>     JSON report
  --plot              Write figures to <output>/plots
  --format=<suffix>   Figure format (.png, .pdf, .svg) [default: .svg]
  --verbose           Show progress and INFO logging

Exit status: 0 when every check passes, 1 when a check fails or a numerical
construction fails, 2 for usage and input errors.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List

import numpy as np
from tqdm import tqdm

from . import export
from .arcset import angle_gap, load_arcset
from .config import COMMANDS, PLOT_FORMATS, RunConfig
from .curve import build_curve, divisor_validate, load_divisor
from .errors import ArcverbError, InputError
from .hardy0 import OneArcSpace, verify_all
from .measure import density, moments, quadrature, taylor_coefficients
from .mfunc import build_m, divisor_grid, fit_m, sample_points, strip_and_rebuild, structure_report
from .opuc import recurrence_defect, verblunsky_from_measure
from .schur import schur_sequence

logger = logging.getLogger("arcverb")

# ANSI color codes
RED = "\033[0;31m"
GREEN = "\033[0;32m"
YELLOW = "\033[1;33m"
NC = "\033[0m"  # No Color


def check(value: float, threshold: float, upper: bool = True) -> Dict[str, Any]:
    """A named pass/fail entry; upper=False means value ≥ −threshold passes."""
    value = float(value)
    passed = value <= threshold if upper else value >= -threshold
    return {"value": value, "threshold": threshold, "passed": bool(passed)}


def load_problem(config: RunConfig):
    """Arcset, curve and validated divisor named by the configuration."""
    E = load_arcset(config["arcs"])
    curve = build_curve(E)
    D = divisor_validate(curve, load_divisor(config["divisor"])) if config["divisor"] else None
    return curve, D


# ============================================================================
# Stages
# ============================================================================

def stage_mfunc(config: RunConfig, curve, D, tables, report):
    M = build_m(curve, D)
    structure = structure_report(M)
    tol = config.tolerances
    report["mfunc"] = {"function": M.to_dict(), "structure": structure}
    report["checks"].update({
        "m0_normalization": check(structure["m0_defect"], tol["normalization"]),
        "minf_normalization": check(structure["minf_defect"], tol["normalization"]),
        "positivity_inside": check(structure["min_re_inside"], tol["structure"], upper=False),
        "gap_imaginary": check(structure["gap_re_max"], tol["structure"]),
    })
    z = sample_points(config["fit_samples"], config["seed"])
    tables["m_samples"] = export.sample_table(z, M(z))
    return M


def stage_measure(config: RunConfig, M, D, tables, report):
    mu = quadrature(M, D, config["level"], check=False)
    k_max = 5
    moment_defect = float(np.max(np.abs(moments(mu, k_max) - taylor_coefficients(M, k_max))))
    report["measure"] = {
        "level": mu.level,
        "nodes": len(mu.nodes),
        "total_mass": mu.total_mass,
        "atoms": [{"angle": float(np.mod(np.angle(t), 2.0 * np.pi)), "mass": m} for t, m in mu.atoms],
        "dropped": list(mu.dropped),
    }
    report["checks"].update({
        "unit_mass": check(abs(mu.total_mass - 1.0), config.tolerances["mass"]),
        "moments": check(moment_defect, config.tolerances["moments"]),
    })
    tables.update(export.measure_tables(mu))
    if config["plot"]:
        from .figures import measure_density
        report.setdefault("figures", []).append(measure_density.plot(
            mu, lambda phi: density(M, phi), M.curve.arcset,
            output_dir=str(config.output_path("plots")), output_format=config["format"],
            verbose=logger.isEnabledFor(logging.INFO)))
    return mu


def stage_verblunsky(config: RunConfig, M, mu, tables, report):
    N = config["N"]
    polys = verblunsky_from_measure(mu, N)
    schur = schur_sequence(M, N, config["radius"], config["grid"], config.tolerances["precision"])
    n = min(len(polys.verblunsky), len(schur))
    alpha = polys.verblunsky.params
    deviation = float(np.max(np.abs(alpha[:n] - schur.params[:n])))
    shift, defect = recurrence_defect(alpha) if N >= 2 else (0, float("nan"))

    report["verblunsky"] = {
        "alpha": alpha,
        "schur": schur.params,
        "schur_terminated": schur.terminated,
        "schur_error_estimate": max(schur.error_estimate, default=0.0),
        "alpha_spread": float(np.max(np.abs(alpha - alpha[0]))),
        "orthogonality_defect": polys.orthogonality_defect(mu),
        "norm_identity_defect": float(np.max(polys.norm_defects)),
        "recurrence": {"shift": shift, "defect": defect},
    }
    report["checks"]["dual_path"] = check(deviation, config.tolerances["dual_path"])
    tables["verblunsky"] = export.sequence_table(polys.verblunsky)
    tables["schur"] = export.sequence_table(schur)
    if config["plot"]:
        from .figures import verblunsky_sequence
        label = M.divisor.label() if M.divisor is not None else ""
        report.setdefault("figures", []).append(verblunsky_sequence.plot(
            polys.verblunsky, schur, label, output_dir=str(config.output_path("plots")),
            output_format=config["format"], verbose=logger.isEnabledFor(logging.INFO)))
    return polys


def stage_closure(config: RunConfig, M, report):
    """
    Strip one parameter, read the divisor of the result off a fit, rebuild M
    from that divisor and compare it with the stripped samples.
    """
    stripped = strip_and_rebuild(M, 1.0)
    z = sample_points(config["fit_samples"], config["seed"])
    values = np.asarray(stripped(z), dtype=complex)
    _, divisor, fit_residual = fit_m(M.curve, z, values, tol=float("inf"))
    rebuilt = np.asarray(build_m(M.curve, divisor)(z), dtype=complex)
    residual = float(np.max(np.abs(rebuilt - values) / np.maximum(1.0, np.abs(values))))
    report["closure"] = {"residual": residual, "fit_residual": fit_residual,
                         "divisor": divisor.to_dict()["divisor"], "branch": list(divisor.branch)}
    report["checks"]["closure"] = check(residual, config.tolerances["closure"])


# ============================================================================
# Commands
# ============================================================================

def cmd_verify_onearc(config: RunConfig, tables, report):
    runs = []
    for r in config.r_values:
        result = verify_all(OneArcSpace(r), config["samples"], config["seed"],
                            config.tolerances["identity"])
        runs.append(result)
        for key, value in result["residuals"].items():
            report["checks"][f"r={r:g}:{key}"] = check(value, result["thresholds"][key])
    report["onearc"] = runs


def cmd_mfunc(config: RunConfig, tables, report):
    curve, D = load_problem(config)
    stage_mfunc(config, curve, D, tables, report)


def cmd_measure(config: RunConfig, tables, report):
    curve, D = load_problem(config)
    M = stage_mfunc(config, curve, D, tables, report)
    stage_measure(config, M, D, tables, report)


def cmd_verblunsky(config: RunConfig, tables, report):
    curve, D = load_problem(config)
    M = stage_mfunc(config, curve, D, tables, report)
    mu = stage_measure(config, M, D, tables, report)
    stage_verblunsky(config, M, mu, tables, report)


def cmd_pipeline(config: RunConfig, tables, report):
    curve, D = load_problem(config)
    M = stage_mfunc(config, curve, D, tables, report)
    mu = stage_measure(config, M, D, tables, report)
    stage_verblunsky(config, M, mu, tables, report)
    stage_closure(config, M, report)


def cmd_sweep(config: RunConfig, tables, report):
    """Build M, measure and α_n for every divisor of the grid."""
    curve, _ = load_problem(config)
    grid = divisor_grid(curve, config["per_gap"], config["sheets"])
    z = sample_points(config["fit_samples"], config["seed"])
    sequences: List[np.ndarray] = []
    entries = []
    roundtrip = 0.0
    for k, D in enumerate(tqdm(grid, desc="divisors", disable=not logger.isEnabledFor(logging.INFO))):
        entry = {"index": k, "divisor": D.to_dict()["divisor"]}
        try:
            M = build_m(curve, D)
            mu = quadrature(M, M.divisor, config["level"])
            alpha = verblunsky_from_measure(mu, config["N"]).verblunsky
            _, recovered, _ = fit_m(curve, z, M(z))
            error = max(angle_gap(a, b) for a, b in zip(recovered.angles, M.divisor.angles))
            if np.any(recovered.sheets != M.divisor.sheets):
                error = float("inf")
        except ArcverbError as e:
            entry["error"] = e.to_dict()
            entries.append(entry)
            continue
        roundtrip = max(roundtrip, error)
        entry.update({"total_mass": mu.total_mass, "alpha_0": alpha.params[0],
                      "roundtrip_error": error})
        entries.append(entry)
        sequences.append(alpha.params)
        tables[f"alpha_{k:03d}"] = export.sequence_table(alpha)

    separation = float("inf")
    for i in range(len(sequences)):
        for j in range(i + 1, len(sequences)):
            separation = min(separation, float(np.max(np.abs(sequences[i] - sequences[j]))))

    failures = sum(1 for e in entries if "error" in e)
    report["sweep"] = {"divisors": entries, "count": len(grid), "failures": failures,
                       "min_separation": separation}
    report["checks"].update({
        "all_divisors_built": check(failures, 0.0),
        "roundtrip": check(roundtrip, config.tolerances["roundtrip"]),
        "injective": {"value": separation, "threshold": 0.0, "passed": bool(separation > 0.0)},
    })


COMMAND_HELP = {
    "verify-onearc": "Closed-form identity checks of the one-arc model",
    "mfunc": "Build M(z, D) and check its structure",
    "measure": "Recover the measure of M(z, D)",
    "verblunsky": "Verblunsky coefficients by both extraction paths",
    "pipeline": "Full chain plus the Schur-step closure check",
    "sweep": "Iterate a divisor grid over D(E)",
}

COMMAND_TABLE: Dict[str, Callable] = {
    "verify-onearc": cmd_verify_onearc,
    "mfunc": cmd_mfunc,
    "measure": cmd_measure,
    "verblunsky": cmd_verblunsky,
    "pipeline": cmd_pipeline,
    "sweep": cmd_sweep,
}


# ============================================================================
# Entry point
# ============================================================================

def parse_arguments(argv=None):
    """Parse command-line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML parameter file")
    common.add_argument("--arcs", help="Arc file (JSON)")
    common.add_argument("--divisor", help="Divisor file (JSON)")
    common.add_argument("-N", type=int, dest="N", help="Number of parameters")
    common.add_argument("--level", type=int, help="Tanh-sinh quadrature level")
    common.add_argument("--radius", type=float, help="Schur sampling radius")
    common.add_argument("--samples", type=int, help="Random points for identity checks")
    common.add_argument("--seed", type=int, help="Seed for randomized checks")
    common.add_argument("--r", type=float, nargs="+", help="One-arc parameter(s) r")
    common.add_argument("--per-gap", type=int, dest="per_gap", help="Sweep points per gap")
    common.add_argument("--emit", help="Table output: CSV directory or .h5/.hdf5 file")
    common.add_argument("--report", help="JSON report path")
    common.add_argument("--plot", action="store_true", default=None, help="Write figures")
    common.add_argument("--format", choices=PLOT_FORMATS, help="Figure format")
    common.add_argument("--verbose", action="store_true", help="Show detailed output")

    parser = argparse.ArgumentParser(prog="arcverb",
                                     description="Measures and Verblunsky coefficients on arcs")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=COMMAND_HELP[name])
    return parser.parse_args(argv)


def build_config(args) -> RunConfig:
    overrides = {name: getattr(args, name) for name in
                 ("arcs", "divisor", "N", "level", "radius", "samples", "seed", "r",
                  "per_gap", "emit", "report", "plot", "format")}
    overrides["command"] = args.command
    return RunConfig(args.config, overrides).validate()


def print_summary(report: Dict[str, Any]):
    print()
    print("=" * 60)
    print(f"arcverb {report['command']}")
    print("=" * 60)
    for name, entry in report["checks"].items():
        if entry["passed"]:
            print(f"{GREEN}✓ PASS{NC}: {name} = {entry['value']:.3e} (≤ {entry['threshold']:.1e})")
        else:
            print(f"{RED}✗ FAIL{NC}: {name} = {entry['value']:.3e} (threshold {entry['threshold']:.1e})")
    print("=" * 60)
    if report["passed"]:
        print(f"{GREEN}✓ All checks passed{NC}")
    else:
        print(f"{RED}✗ {len(report['failed'])} check(s) failed{NC}")


def run(config: RunConfig) -> Dict[str, Any]:
    """Execute the configured command and return its report."""
    report: Dict[str, Any] = {"command": config["command"], "config": config.to_dict(), "checks": {}}
    tables: Dict[str, export.Table] = {}
    COMMAND_TABLE[config["command"]](config, tables, report)

    report["failed"] = [name for name, entry in report["checks"].items() if not entry["passed"]]
    report["passed"] = not report["failed"]
    if config["emit"] and tables:
        export.emit_tables(config["emit"], tables,
                           {"command": config["command"], "passed": report["passed"],
                            "config": config.to_dict()})
    if config["report"]:
        export.write_json(config["report"], report)
    return report


def main(argv=None) -> int:
    """Main execution function."""
    args = parse_arguments(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = build_config(args)
        report = run(config)
    except InputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except ArcverbError as e:
        print(f"Error: {e}", file=sys.stderr)
        if e.details:
            print(f"  details: {e.to_dict()['details']}", file=sys.stderr)
        return 1

    print_summary(report)
    if args.verbose and "verblunsky" in report:
        print(f"{YELLOW}α_0 = {complex(report['verblunsky']['alpha'][0]):.10f}{NC}")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
