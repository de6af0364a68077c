"""
Test Framework for arcverb

Shared utilities for testing arcverb functionality.
"""

from .harness import (
    REPO_ROOT,
    INPUT_DIR,
    TEST_DATA_DIR,
    ensure_output_dirs,
    run_arcverb,
    read_param_file,
    create_test_param_file,
    load_report,
    read_sequence_csv,
    run_test_functions,
)

from .fixtures import (
    ONEARC_R,
    SIN_THETA,
    THETA,
    GERONIMUS_ATOM,
    onearc_space,
    onearc_set,
    two_arc_set,
    onearc_curve,
    two_arc_curve,
    onearc_divisor,
    two_arc_divisor,
    geronimus_m,
    two_arc_m,
    closure_divisors,
    random_disk,
    random_exterior,
)

__all__ = [
    # Test harness utilities
    'REPO_ROOT',
    'INPUT_DIR',
    'TEST_DATA_DIR',
    'ensure_output_dirs',
    'run_arcverb',
    'read_param_file',
    'create_test_param_file',
    'load_report',
    'read_sequence_csv',
    'run_test_functions',
    # Standard fixtures
    'ONEARC_R',
    'SIN_THETA',
    'THETA',
    'GERONIMUS_ATOM',
    'onearc_space',
    'onearc_set',
    'two_arc_set',
    'onearc_curve',
    'two_arc_curve',
    'onearc_divisor',
    'two_arc_divisor',
    'geronimus_m',
    'two_arc_m',
    'closure_divisors',
    'random_disk',
    'random_exterior',
]
