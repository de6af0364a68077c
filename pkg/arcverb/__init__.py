"""
arcverb: measures on unions of circular arcs and their Verblunsky coefficients.

Divisor-indexed Carathéodory functions M(z, D) on the hyperelliptic double of
the complement of E, the measures they represent, and the Schur/Verblunsky
parameter sequences of those measures, with the one-arc Hardy-space model as
a closed-form check bed.
"""

from .arcset import ArcSet, build_arcset, load_arcset, onearc_arcset, symmetric_arcset
from .curve import Divisor, build_curve, divisor_validate, load_divisor
from .errors import ArcverbError
from .measure import QuadratureMeasure, quadrature
from .mfunc import SurfaceFunction, build_m, fit_m
from .opuc import verblunsky_from_measure
from .schur import SchurParamSeq, schur_sequence

__version__ = "0.1.0"

__all__ = [
    "ArcSet",
    "ArcverbError",
    "Divisor",
    "QuadratureMeasure",
    "SchurParamSeq",
    "SurfaceFunction",
    "build_arcset",
    "build_curve",
    "build_m",
    "divisor_validate",
    "fit_m",
    "load_arcset",
    "load_divisor",
    "onearc_arcset",
    "quadrature",
    "schur_sequence",
    "symmetric_arcset",
    "verblunsky_from_measure",
]
