#!/usr/bin/env python3
"""
Schur Algorithm Unit Test

Validates: Sampled Schur functions, strip/compose, sequence extraction

Test cases:
  - test_constant_function: s ≡ a has parameters (a, 0, 0, ...)
  - test_compose_then_strip: Parameters survive composition and stripping
  - test_extremal_termination: A Blaschke factor ends the sequence
  - test_random_round_trip: Random sequences survive compose then strip
  - test_rotation_rotates_parameters: Rotated constant parameters come back rotated
  - test_param_out_of_disk: |a| ≥ 1 is rejected by compose
  - test_grid_validation: Non power-of-two grids are rejected
  - test_sequence_from_caratheodory: schur_sequence reads M through the Cayley map
  - test_single_parameter_function: (1 + 0.6z)/(1 − 0.6z) has parameters (0.6, 0, ...)
  - test_sequence_ranges: N and radius outside their ranges raise InputError
  - test_rotated_and_table: Rotation and CSV table layout
  - test_deep_round_trip: Forty parameters of modulus 0.6 survive compose then strip
  - test_deep_sequence_detects_precision_loss: Too deep a sequence at a small radius raises PrecisionLoss
  - test_deep_sequence_at_larger_radius: The same sequence at radius 0.85 is accurate with a small error estimate
  - test_overshoot_raises: A strip leaving the Schur class raises instead of clipping
  - test_sequence_csv: CSV written by export is read back

Author: arcverb Testing Team
Date: 2026-10-18
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

# Add framework to path
REPO_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(REPO_ROOT / "tests"))

from framework import geronimus_m, read_sequence_csv, run_test_functions

from arcverb.errors import InputError, ParamOutOfDisk, PrecisionLoss
from arcverb.export import write_sequence_csv
from arcverb.moebius import AnalyticFn, cayley_schur_to_caratheodory
from arcverb.schur import (
    SampledSchurFn,
    SchurParamSeq,
    schur_compose,
    schur_sequence,
    schur_strip,
    strip_sequence,
)

PARAMS = np.array([0.5, -0.3 + 0.2j, 0.1j, 0.4 - 0.1j, -0.2])


def test_constant_function():
    seq = strip_sequence(SampledSchurFn.constant(0.6), 5)
    assert abs(seq[0] - 0.6) < 1e-15
    assert np.max(np.abs(seq.params[1:])) < 1e-15
    assert not seq.terminated


def test_compose_then_strip():
    s = schur_compose(PARAMS)
    seq = strip_sequence(s, 8)
    assert len(seq) == 8
    assert np.max(np.abs(seq.params[:5] - PARAMS)) < 1e-12
    assert np.max(np.abs(seq.params[5:])) < 1e-12

    a, rest = schur_strip(s)
    assert abs(a - PARAMS[0]) < 1e-14
    assert abs(rest.value_at_zero - PARAMS[1]) < 1e-12


def test_extremal_termination():
    # s(z) = (z + 0.5)/(1 + 0.5 z) has a_0 = 0.5 and a_1 of modulus 1
    z = SampledSchurFn.constant(0.0).grid
    s = SampledSchurFn(0.5, (z + 0.5) / (1.0 + 0.5 * z))
    seq = strip_sequence(s, 6)
    assert seq.terminated
    assert len(seq) == 2
    assert abs(seq[0] - 0.5) < 1e-14
    assert abs(abs(seq[1]) - 1.0) < 1e-12


def test_random_round_trip():
    rng = np.random.default_rng(2)
    for _ in range(50):
        length = int(rng.integers(1, 11))
        radius = 0.9 * np.sqrt(rng.uniform(0.0, 1.0, length))
        params = radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, length))
        seq = strip_sequence(schur_compose(params), length)
        assert np.max(np.abs(seq.params - params)) < 1e-9
        assert max(seq.overshoot, default=0.0) < 1e-9


def test_rotation_rotates_parameters():
    seq = strip_sequence(schur_compose(np.full(10, 0.6j)), 10)
    assert np.max(np.abs(seq.params - 0.6j)) < 1e-10


def test_param_out_of_disk():
    try:
        schur_compose([0.2, 1.0])
    except ParamOutOfDisk as e:
        assert e.details["index"] == 1
        return
    raise AssertionError("|a| = 1 was accepted")


def test_grid_validation():
    for n in (100, 128, 1000):
        try:
            SampledSchurFn(0.5, np.zeros(n, dtype=complex))
        except InputError:
            continue
        raise AssertionError(f"grid of {n} points was accepted")
    try:
        SampledSchurFn(0.5, np.full(256, 1.5 + 0j))
    except InputError:
        return
    raise AssertionError("samples outside the disk were accepted")


def test_sequence_from_caratheodory():
    def schur_fn(z):
        s = np.zeros_like(z)
        for a in PARAMS[::-1]:
            s = (a + z * s) / (1.0 + np.conj(a) * z * s)
        return s

    M = cayley_schur_to_caratheodory(schur_fn)
    seq = schur_sequence(M, 5, radius=0.4, n_grid=1024)
    assert np.max(np.abs(seq.params - PARAMS)) < 1e-8


def test_single_parameter_function():
    M = AnalyticFn(lambda z: (1.0 + 0.6 * z) / (1.0 - 0.6 * z))
    seq = schur_sequence(M, 5)
    assert abs(seq[0] - 0.6) < 1e-12
    assert np.max(np.abs(seq.params[1:])) < 1e-12


def test_sequence_ranges():
    M = cayley_schur_to_caratheodory(lambda z: np.full_like(z, 0.6))
    for N, radius in ((0, 0.5), (41, 0.5), (5, 0.05), (5, 0.95)):
        try:
            schur_sequence(M, N, radius)
        except InputError:
            continue
        raise AssertionError(f"N = {N}, radius = {radius} was accepted")


def test_deep_round_trip():
    tail = SampledSchurFn.constant(0.6)
    seq = strip_sequence(schur_compose(np.full(40, 0.6), tail), 40)
    assert len(seq) == 40
    assert not seq.terminated
    assert np.max(np.abs(seq.params - 0.6)) < 1e-9


def test_deep_sequence_detects_precision_loss():
    try:
        schur_sequence(geronimus_m(), 40, radius=0.5)
    except PrecisionLoss as e:
        assert e.details["radius"] == 0.5
        assert 0 < e.details["n"] < 40
        return
    raise AssertionError("forty parameters at radius 0.5 were accepted")


def test_deep_sequence_at_larger_radius():
    seq = schur_sequence(geronimus_m(), 30, radius=0.85)
    assert len(seq) == 30
    assert abs(abs(seq[0]) - 0.6) < 1e-6
    assert np.max(np.abs(seq.params - seq[0])) < 1e-6
    assert len(seq.error_estimate) == 30
    assert max(seq.error_estimate) < 1e-6


def test_overshoot_raises():
    # s(z) = 2z has modulus 1 on |z| = 0.5 but is not a Schur function
    s = SampledSchurFn.from_coefficients([0.0, 2.0], radius=0.5)
    try:
        strip_sequence(s, 3)
    except PrecisionLoss as e:
        assert e.details["n"] == 0
        assert abs(e.details["overshoot"] - 1.0) < 1e-12
        return
    raise AssertionError("a strip leaving the unit disk was accepted")


def test_rotated_and_table():
    seq = SchurParamSeq(PARAMS)
    tau = np.exp(0.4j)
    assert np.max(np.abs(seq.rotated(tau).params - tau * PARAMS)) < 1e-15
    table = seq.table()
    assert table.shape == (5, 5)
    assert np.all(table[:, 0] == np.arange(5))
    assert np.max(np.abs(table[:, 3] - np.abs(PARAMS))) < 1e-15


def test_sequence_csv():
    seq = SchurParamSeq(PARAMS)
    with tempfile.TemporaryDirectory() as tmp:
        path = write_sequence_csv(Path(tmp) / "alpha.csv", seq)
        assert path.read_text().splitlines()[0] == "n,re,im,abs,arg"
        loaded = read_sequence_csv(path)
    assert np.max(np.abs(loaded.params - PARAMS)) < 1e-15


def main():
    print("Unit Test: schur")
    return run_test_functions("schur", [
        test_constant_function,
        test_compose_then_strip,
        test_extremal_termination,
        test_random_round_trip,
        test_rotation_rotates_parameters,
        test_param_out_of_disk,
        test_grid_validation,
        test_sequence_from_caratheodory,
        test_single_parameter_function,
        test_sequence_ranges,
        test_rotated_and_table,
        test_deep_round_trip,
        test_deep_sequence_detects_precision_loss,
        test_deep_sequence_at_larger_radius,
        test_overshoot_raises,
        test_sequence_csv,
    ])


if __name__ == "__main__":
    sys.exit(main())
