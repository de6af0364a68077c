"""
Standard fixtures for arcverb tests

Arcsets, divisors and Carathéodory functions shared by the unit, integration
and scientific tiers.

    g = 0: the one-arc set with r = 0.5 (sin θ = 0.6), divisor (1, +1).
           M is the Geronimus function with constant parameters of modulus 0.6.
    g = 1: arcs [0.5, 1.5] and [2π − 1.5, 2π − 0.5], divisor at the gap
           midpoints 1 and −1 on the physical sheet.

Author: arcverb Testing Team
Date: 2026-10-18
"""

import numpy as np

from . import harness  # noqa: F401  (puts the repository on sys.path)

from arcverb.arcset import onearc_arcset, symmetric_arcset
from arcverb.curve import Divisor, build_curve
from arcverb.hardy0 import OneArcSpace
from arcverb.mfunc import build_m, divisor_grid

ONEARC_R = 0.5
SIN_THETA = 0.6
THETA = float(np.arcsin(SIN_THETA))
TWO_ARC_PAIRS = [(0.5, 1.5)]

# Geronimus fixture: mass of the atom at 1 and of the absolutely continuous part
GERONIMUS_ATOM = 0.75


def onearc_space(r=ONEARC_R):
    return OneArcSpace(r)


def onearc_set():
    return onearc_arcset(THETA)


def two_arc_set():
    return symmetric_arcset(TWO_ARC_PAIRS)


def onearc_curve():
    return build_curve(onearc_set())


def two_arc_curve():
    return build_curve(two_arc_set())


def onearc_divisor(angle=0.0, sheet=1):
    return Divisor.from_angles([angle], [sheet])


def two_arc_divisor(angles=(0.0, np.pi), sheets=(1, 1)):
    return Divisor.from_angles(list(angles), list(sheets))


def geronimus_m():
    """M(z, D) for the one-arc fixture; its Schur parameters all have modulus 0.6."""
    return build_m(onearc_curve(), onearc_divisor())


def two_arc_m():
    return build_m(two_arc_curve(), two_arc_divisor())


def closure_divisors(genus, count=10):
    """count interior divisors of the fixture of the given genus, both sheets."""
    curve = onearc_curve() if genus == 0 else two_arc_curve()
    per_gap = 5 if genus == 0 else 3
    grid = divisor_grid(curve, per_gap=per_gap, sheets=(1, -1), margin=0.1)
    step = max(1, len(grid) // count)
    return curve, grid[::step][:count]


def random_disk(count, seed=0, rmax=0.9):
    """Points uniform in area on the disk of radius rmax."""
    rng = np.random.default_rng(seed)
    radius = rmax * np.sqrt(rng.uniform(0.0, 1.0, count))
    return radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


def random_exterior(count, seed=0, rmin=1.2, rmax=3.0):
    rng = np.random.default_rng(seed)
    radius = rng.uniform(rmin, rmax, count)
    return radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


__all__ = [
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
