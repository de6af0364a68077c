"""
Exception hierarchy for arcverb.

Every error carries the module that raised it (provenance) and a dict of
details so that command-line reports can echo the offending values.

    ArcverbError
    ├── InputError            bad user data (arcsets, divisors, config)
    ├── ConstructionError     a numerical construction failed
    └── ConvergenceError      a limiting or iterative procedure failed
"""

from typing import Any, Dict, Optional


class ArcverbError(Exception):
    """Base class for all arcverb errors."""

    module = "arcverb"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = dict(details or {})

    def __str__(self):
        return f"[{self.module}] {self.message}"

    def to_dict(self) -> Dict[str, Any]:
        """Serializable form used in JSON reports."""
        return {
            "error": type(self).__name__,
            "module": self.module,
            "message": self.message,
            "details": {k: _plain(v) for k, v in self.details.items()},
        }


class InputError(ArcverbError):
    """User-supplied data violates a documented precondition."""


class ConstructionError(ArcverbError):
    """A numerical construction could not be completed."""


class ConvergenceError(ArcverbError):
    """A limit or an iteration did not reach its tolerance."""


def _plain(value):
    """Convert numpy scalars and complex numbers to JSON-friendly values."""
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "tolist"):
        value = value.tolist()
        if isinstance(value, complex):
            return [value.real, value.imag]
    return value


# ============================================================================
# Configuration
# ============================================================================

class ConfigError(InputError):
    module = "config"


# ============================================================================
# arcset
# ============================================================================

class OverlappingArcs(InputError):
    module = "arcset"


class DegenerateArc(InputError):
    module = "arcset"


class AsymmetricArcSet(InputError):
    module = "arcset"


class PointOneInsideE(InputError):
    module = "arcset"


# ============================================================================
# moebius
# ============================================================================

class PoleEncountered(ConstructionError):
    module = "moebius"


class NotNormalized(InputError):
    module = "moebius"


class RefPointNotInGap(InputError):
    module = "moebius"


class DegenerateMoebius(ConstructionError):
    module = "moebius"


# ============================================================================
# schur
# ============================================================================

class ExtremalFunction(ConstructionError):
    module = "schur"


class ParamOutOfDisk(InputError):
    module = "schur"


class PrecisionLoss(ConvergenceError):
    module = "schur"


# ============================================================================
# hardy0
# ============================================================================

class PoleAtConjZeta0(ConstructionError):
    module = "hardy0"


class NormalizationVanishes(InputError):
    module = "hardy0"


# ============================================================================
# curve
# ============================================================================

class WrongGapCount(InputError):
    module = "curve"


class PointOffGap(InputError):
    module = "curve"


# ============================================================================
# mfunc
# ============================================================================

class SingularSystem(ConstructionError):
    module = "mfunc"


class PositivityViolation(ConstructionError):
    module = "mfunc"


class NoConvergence(ConvergenceError):
    module = "mfunc"


class NotImaginaryAtRef(ConstructionError):
    module = "mfunc"


class RefIsPole(InputError):
    module = "mfunc"


class NoPoleAtRef(ConstructionError):
    module = "mfunc"


# ============================================================================
# measure
# ============================================================================

class NegativeDensity(ConstructionError):
    module = "measure"


class NegativeMass(ConstructionError):
    module = "measure"


class MassDeficit(ConvergenceError):
    module = "measure"


# ============================================================================
# opuc
# ============================================================================

class MeasureTooThin(InputError):
    module = "opuc"


class NormCollapse(ConstructionError):
    module = "opuc"


class RecursionDefect(ConvergenceError):
    module = "opuc"
