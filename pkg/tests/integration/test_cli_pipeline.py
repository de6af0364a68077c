#!/usr/bin/env python3
"""
Command-Line Pipeline Integration Test

Validates: Complete arcverb runs from parameter files to tables and reports

This test runs the command-line tool in a subprocess and checks:
- Exit status 0 for passing runs, 1 for failed checks, 2 for bad input
- JSON reports with every check passed
- CSV table directories and HDF5 table files
- Figures when plotting is switched on

Test cases:
  - test_verify_onearc: One-arc identities at three values of r
  - test_geronimus_pipeline: Full chain on the one-arc fixture, CSV tables
  - test_two_arc_hdf5: Full chain on two arcs, HDF5 tables
  - test_single_stages: mfunc and measure commands emit their own tables
  - test_plot_output: --plot writes both figures
  - test_verify_near_degenerate: r = 0.999 passes at identity tolerance 1e-7
  - test_repeat_runs_identical: Two runs with one seed write byte-identical CSV tables
  - test_closure_check_fails: An unreachable closure tolerance exits 1 with the check failed
  - test_deep_sequence_rejected: N = 40 at radius 0.5 exits 1 with a schur error
  - test_wrong_gap_count: Divisor with too few points exits 2
  - test_overlapping_arcs: Invalid arc file exits 2
  - test_invalid_parameters: Out-of-range N and a missing command exit 2

Author: arcverb Testing Team
Date: 2026-10-18
"""

import shutil
import sys
from pathlib import Path

# Add framework to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from framework import (
    INPUT_DIR,
    TEST_DATA_DIR,
    create_test_param_file,
    load_report,
    run_arcverb,
    run_test_functions,
)

from arcverb.export import read_hdf5

# ANSI color codes
RED = '\033[0;31m'
NC = '\033[0m'  # No Color


def assert_exit(returncode, expected, stdout, stderr):
    if returncode != expected:
        print(f"STDOUT:\n{stdout}")
        print(f"STDERR:\n{stderr}")
        assert False, f"{RED}arcverb exited with {returncode}, expected {expected}{NC}"


def test_verify_onearc():
    """
    Expected: Exit code 0 and a passing report for r = 0.2, 0.5, 0.8
    Validates: verify-onearc command
    """
    print("Testing verify-onearc...")
    param_file, output_dir, temp_dir = create_test_param_file(
        "onearc", ref_param_file=INPUT_DIR / "onearc.yaml", sections={"onearc": {"samples": 200}})
    try:
        returncode, stdout, stderr = run_arcverb(["verify-onearc", "--config", param_file])
        assert_exit(returncode, 0, stdout, stderr)
        report = load_report(output_dir / "report.json")
        assert report["passed"]
        assert [run["r"] for run in report["onearc"]] == [0.2, 0.5, 0.8]
        assert "✓ All checks passed" in stdout
        print("  ✓ verify-onearc passed")
    finally:
        shutil.rmtree(temp_dir)


def test_geronimus_pipeline():
    """
    Expected: Exit code 0, report with closure, CSV tables for every stage
    Validates: pipeline command with CSV emit
    """
    print("Testing Geronimus pipeline...")
    param_file, output_dir, temp_dir = create_test_param_file("geronimus")
    try:
        returncode, stdout, stderr = run_arcverb(["pipeline", "--config", param_file])
        assert_exit(returncode, 0, stdout, stderr)
        report = load_report(output_dir / "report.json")
        assert report["passed"], f"failed checks: {report['failed']}"
        for name in ("m0_normalization", "unit_mass", "moments", "dual_path", "closure"):
            assert report["checks"][name]["passed"], name
        assert len(report["measure"]["atoms"]) == 1
        assert abs(report["measure"]["atoms"][0]["mass"] - 0.75) < 1e-7
        for name in ("m_samples", "measure", "atoms", "verblunsky", "schur"):
            assert (output_dir / "tables" / f"{name}.csv").exists(), name
        header = (output_dir / "tables" / "verblunsky.csv").read_text().splitlines()[0]
        assert header == "n,re,im,abs,arg"
        print("  ✓ pipeline passed with CSV tables")
    finally:
        shutil.rmtree(temp_dir)


def test_two_arc_hdf5():
    """
    Expected: Exit code 0 and one HDF5 file holding all tables
    Validates: pipeline command with HDF5 emit and -N override
    """
    print("Testing two-arc pipeline with HDF5 output...")
    param_file, output_dir, temp_dir = create_test_param_file(
        "two_arcs", ref_param_file=INPUT_DIR / "two_arcs.yaml")
    try:
        target = output_dir / "tables.h5"
        returncode, stdout, stderr = run_arcverb(
            ["pipeline", "--config", param_file, "--emit", target, "-N", 10])
        assert_exit(returncode, 0, stdout, stderr)
        tables, metadata = read_hdf5(target)
        assert set(tables) == {"m_samples", "measure", "atoms", "verblunsky", "schur"}
        columns, rows = tables["verblunsky"]
        assert list(columns) == ["n", "re", "im", "abs", "arg"]
        assert rows.shape == (10, 5)
        assert metadata["command"] == "pipeline"
        assert bool(metadata["passed"])
        print("  ✓ HDF5 tables written")
    finally:
        shutil.rmtree(temp_dir)


def test_single_stages():
    """
    Expected: mfunc emits only samples; measure adds the measure tables
    Validates: Stage commands
    """
    print("Testing single-stage commands...")
    param_file, output_dir, temp_dir = create_test_param_file("stages")
    try:
        returncode, stdout, stderr = run_arcverb(["mfunc", "--config", param_file])
        assert_exit(returncode, 0, stdout, stderr)
        assert sorted(p.name for p in (output_dir / "tables").iterdir()) == ["m_samples.csv"]
        report = load_report(output_dir / "report.json")
        assert "measure" not in report
        assert abs(report["mfunc"]["function"]["q"][0] + 0.625) < 1e-10

        returncode, stdout, stderr = run_arcverb(["measure", "--config", param_file, "--level", 9])
        assert_exit(returncode, 0, stdout, stderr)
        report = load_report(output_dir / "report.json")
        assert report["measure"]["level"] == 9
        assert (output_dir / "tables" / "atoms.csv").exists()
        print("  ✓ stage commands passed")
    finally:
        shutil.rmtree(temp_dir)


def test_plot_output():
    """
    Expected: Both figures in <output>/plots with the requested suffix
    Validates: --plot and --format
    """
    print("Testing plot output...")
    param_file, output_dir, temp_dir = create_test_param_file("plots", sections={"schur": {"N": 8}})
    try:
        returncode, stdout, stderr = run_arcverb(
            ["verblunsky", "--config", param_file, "--plot", "--format", ".png"])
        assert_exit(returncode, 0, stdout, stderr)
        for name in ("MeasureDensity.png", "VerblunskySequence.png"):
            assert (output_dir / "plots" / name).exists(), name
        print("  ✓ figures written")
    finally:
        shutil.rmtree(temp_dir)


def test_verify_near_degenerate():
    """
    Expected: Exit code 0 at r = 0.999 with every identity residual ≤ 1e-7
    Validates: verify-onearc close to the degenerate arc
    """
    print("Testing verify-onearc at r = 0.999...")
    param_file, output_dir, temp_dir = create_test_param_file(
        "onearc_degenerate", ref_param_file=INPUT_DIR / "onearc.yaml",
        sections={"onearc": {"r": [0.999], "samples": 200}, "tolerances": {"identity": 1e-7}})
    try:
        returncode, stdout, stderr = run_arcverb(["verify-onearc", "--config", param_file])
        assert_exit(returncode, 0, stdout, stderr)
        report = load_report(output_dir / "report.json")
        assert report["passed"]
        assert [run["r"] for run in report["onearc"]] == [0.999]
        print("  ✓ near-degenerate identities passed")
    finally:
        shutil.rmtree(temp_dir)


def test_repeat_runs_identical():
    """
    Expected: Two runs with the same configuration and seed write the same bytes
    Validates: Deterministic CSV output
    """
    print("Testing repeated runs...")
    first, first_dir, temp_dir = create_test_param_file("first", sections={"schur": {"N": 10}})
    second, second_dir, _ = create_test_param_file("second", sections={"schur": {"N": 10}},
                                                   temp_dir=temp_dir)
    try:
        for param_file in (first, second):
            returncode, stdout, stderr = run_arcverb(["pipeline", "--config", param_file])
            assert_exit(returncode, 0, stdout, stderr)
        for name in ("m_samples", "measure", "atoms", "verblunsky", "schur"):
            a = (first_dir / "tables" / f"{name}.csv").read_bytes()
            b = (second_dir / "tables" / f"{name}.csv").read_bytes()
            assert a == b, name
        print("  ✓ tables are byte-identical")
    finally:
        shutil.rmtree(temp_dir)


def test_closure_check_fails():
    """
    Expected: Exit code 1 and a failed closure check under a tolerance no residual meets
    Validates: The closure stage compares the rebuilt function with the stripped samples
    """
    print("Testing a failing closure check...")
    param_file, output_dir, temp_dir = create_test_param_file(
        "closure_strict", sections={"schur": {"N": 10}, "tolerances": {"closure": 1e-30}})
    try:
        returncode, stdout, stderr = run_arcverb(["pipeline", "--config", param_file])
        assert_exit(returncode, 1, stdout, stderr)
        report = load_report(output_dir / "report.json")
        assert not report["checks"]["closure"]["passed"]
        assert report["closure"]["residual"] > 0.0
        assert "closure" in report["failed"]
        print("  ✓ closure failure reported")
    finally:
        shutil.rmtree(temp_dir)


def test_deep_sequence_rejected():
    """
    Expected: Exit code 1 with a schur error when N = 40 at radius 0.5
    Validates: Precision loss in the Schur algorithm stops the run
    """
    print("Testing a Schur sequence too deep for its radius...")
    param_file, _, temp_dir = create_test_param_file("deep")
    try:
        returncode, stdout, stderr = run_arcverb(["pipeline", "--config", param_file, "-N", 40])
        assert_exit(returncode, 1, stdout, stderr)
        assert "[schur]" in stderr
        print("  ✓ rejected with exit code 1")
    finally:
        shutil.rmtree(temp_dir)


def test_wrong_gap_count():
    """
    Expected: Exit code 2 with an error message on stderr
    Validates: Divisor validation at the command line
    """
    print("Testing wrong gap count...")
    returncode, stdout, stderr = run_arcverb(
        ["mfunc", "--arcs", INPUT_DIR / "two_arcs.json",
         "--divisor", TEST_DATA_DIR / "wrong_gap_divisor.json"])
    assert_exit(returncode, 2, stdout, stderr)
    assert "Error:" in stderr
    print("  ✓ rejected with exit code 2")


def test_overlapping_arcs():
    """
    Expected: Exit code 2
    Validates: Arc file validation at the command line
    """
    print("Testing overlapping arcs...")
    returncode, stdout, stderr = run_arcverb(
        ["mfunc", "--arcs", TEST_DATA_DIR / "overlapping_arcs.json",
         "--divisor", INPUT_DIR / "two_arcs_divisor.json"])
    assert_exit(returncode, 2, stdout, stderr)
    assert "overlap" in stderr
    print("  ✓ rejected with exit code 2")


def test_invalid_parameters():
    """
    Expected: Exit code 2 for N = 0, for a missing file and without a command
    Validates: Configuration validation and argument parsing
    """
    print("Testing invalid parameters...")
    returncode, stdout, stderr = run_arcverb(["verify-onearc", "-N", 0])
    assert_exit(returncode, 2, stdout, stderr)
    returncode, stdout, stderr = run_arcverb(["pipeline", "--arcs", INPUT_DIR / "two_arcs.json"])
    assert_exit(returncode, 2, stdout, stderr)
    returncode, stdout, stderr = run_arcverb([])
    assert_exit(returncode, 2, stdout, stderr)
    print("  ✓ all rejected with exit code 2")


def main():
    print("Integration Test: command-line pipeline")
    return run_test_functions("command-line pipeline", [
        test_verify_onearc,
        test_geronimus_pipeline,
        test_two_arc_hdf5,
        test_single_stages,
        test_plot_output,
        test_verify_near_degenerate,
        test_repeat_runs_identical,
        test_closure_check_fails,
        test_deep_sequence_rejected,
        test_wrong_gap_count,
        test_overlapping_arcs,
        test_invalid_parameters,
    ])


if __name__ == "__main__":
    sys.exit(main())
