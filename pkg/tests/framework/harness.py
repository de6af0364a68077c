"""
Test Harness Utilities for arcverb

Centralized test utilities for integration and scientific testing: repository
paths, the command-line runner, and a temporary parameter file writer.

Author: arcverb Testing Team
Date: 2026-10-18
"""

import os
import subprocess
import sys
import tempfile
from pathlib import Path


# Repository paths
REPO_ROOT = Path(__file__).parent.parent.parent
INPUT_DIR = REPO_ROOT / "input"
TEST_DATA_DIR = REPO_ROOT / "tests" / "data"

# Make the package importable when tests run from a source checkout
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))


def ensure_output_dirs(base):
    """
    Create the output directory tree used by a test run

    Args:
        base (str or Path): Directory that receives tables, reports and plots

    Returns:
        Path: The created directory
    """
    base = Path(base)
    (base / "plots").mkdir(parents=True, exist_ok=True)
    return base


def run_arcverb(args, cwd=None, timeout=600):
    """
    Execute the arcverb command-line tool in a subprocess

    Args:
        args (list): Command and flags, e.g. ["pipeline", "--arcs", "input/two_arcs.json"]
        cwd (str or Path): Working directory for execution (default: repo root)
        timeout (int): Seconds before the run is killed

    Returns:
        tuple: (returncode, stdout, stderr)

    Usage:
        returncode, stdout, stderr = run_arcverb(["verify-onearc", "--r", "0.5"])
        assert returncode == 0, f"arcverb failed: {stderr}"
    """
    if cwd is None:
        cwd = REPO_ROOT

    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(REPO_ROOT), env.get("PYTHONPATH")]))
    env["MPLBACKEND"] = "Agg"

    result = subprocess.run(
        [sys.executable, "-m", "arcverb.cli"] + [str(a) for a in args],
        cwd=str(cwd),
        capture_output=True,
        text=True,
        env=env,
        timeout=timeout,
    )

    return result.returncode, result.stdout, result.stderr


def read_param_file(param_file):
    """
    Read a YAML parameter file and return it as a nested dictionary

    Args:
        param_file (str or Path): Path to YAML parameter file

    Returns:
        dict: Parsed configuration sections
    """
    import yaml

    with open(param_file, 'r') as f:
        return yaml.safe_load(f)


def create_test_param_file(output_name, sections=None, ref_param_file=None, temp_dir=None):
    """
    Create a test YAML parameter file from a reference file

    Input paths are made absolute; the output section points into temp_dir.

    Args:
        output_name (str): Name for the output directory (created in temp_dir)
        sections (dict): {section: {key: value}} merged over the reference file
        ref_param_file (str or Path): Reference file (default: input/geronimus.yaml)
        temp_dir (str or Path): Temporary directory for outputs (default: create new)

    Returns:
        tuple: (param_file_path, output_dir_path, temp_dir_path)

    Usage:
        param_file, output_dir, temp_dir = create_test_param_file(
            "closure", sections={"schur": {"N": 10}})

        # Cleanup when done
        import shutil
        shutil.rmtree(temp_dir)
    """
    import yaml

    if ref_param_file is None:
        ref_param_file = INPUT_DIR / "geronimus.yaml"
    if temp_dir is None:
        temp_dir = tempfile.mkdtemp(prefix="arcverb_test_")
    temp_dir = Path(temp_dir)

    config = read_param_file(ref_param_file)

    output_dir = ensure_output_dirs(temp_dir / output_name)
    for key in ("arcs", "divisor"):
        value = config.get("input", {}).get(key)
        if value and not os.path.isabs(value):
            config["input"][key] = str((REPO_ROOT / value).resolve())
    config["output"] = {
        "directory": str(output_dir),
        "emit": str(output_dir / "tables"),
        "report": str(output_dir / "report.json"),
        "plot": False,
        "format": ".svg",
    }
    for section, values in (sections or {}).items():
        config.setdefault(section, {}).update(values)

    param_path = temp_dir / f"{output_name}.yaml"
    with open(param_path, 'w') as f:
        f.write("#" + "=" * 77 + "\n")
        f.write("# arcverb Test Configuration\n")
        f.write("#" + "=" * 77 + "\n")
        f.write("# Auto-generated test parameter file\n")
        f.write("#" + "=" * 77 + "\n\n")
        yaml.dump(config, f, default_flow_style=False, sort_keys=False)

    return param_path, output_dir, temp_dir


def load_report(path):
    """Read a JSON report written by the command-line tool."""
    import json

    with open(path, 'r') as f:
        return json.load(f)


def read_sequence_csv(path):
    """
    Read a Verblunsky/Schur table written by arcverb.export.write_sequence_csv

    Returns:
        SchurParamSeq: Parameters rebuilt from the re and im columns
    """
    import numpy as np

    from arcverb.schur import SchurParamSeq

    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return SchurParamSeq(rows[:, 1] + 1j * rows[:, 2])


def run_test_functions(title, tests):
    """
    Run plain test functions and print a colored summary

    Args:
        title (str): Summary heading
        tests (list): Callables raising AssertionError on failure

    Returns:
        int: 0 if every test passed, 1 otherwise

    Usage:
        if __name__ == "__main__":
            sys.exit(run_test_functions("Unit Test: arcset", [test_a, test_b]))
    """
    # ANSI color codes
    RED = '\033[0;31m'
    GREEN = '\033[0;32m'
    NC = '\033[0m'  # No Color

    passed = 0
    failed = 0
    for test in tests:
        try:
            test()
            print(f"{GREEN}✓ PASS: {test.__name__}{NC}")
            passed += 1
        except AssertionError as e:
            print(f"{RED}✗ FAIL: {test.__name__}{NC}")
            print(f"  {e}")
            failed += 1
        except Exception as e:
            print(f"{RED}✗ ERROR: {test.__name__}{NC}")
            print(f"  {type(e).__name__}: {e}")
            failed += 1

    print()
    print("=" * 60)
    print(f"Test Summary: {title}")
    print("=" * 60)
    print(f"Passed: {passed}")
    print(f"Failed: {failed}")
    print(f"Total:  {passed + failed}")
    print("=" * 60)

    if failed == 0:
        print(f"{GREEN}✓ All tests passed!{NC}")
        return 0
    print(f"{RED}✗ {failed} test(s) failed{NC}")
    return 1


__all__ = [
    'REPO_ROOT',
    'INPUT_DIR',
    'TEST_DATA_DIR',
    'ensure_output_dirs',
    'run_arcverb',
    'read_param_file',
    'create_test_param_file',
    'load_report',
    'run_test_functions',
]
