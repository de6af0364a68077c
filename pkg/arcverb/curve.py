"""
The hyperelliptic double of C̄ ∖ E.

w(z) is the branch of sqrt(∏_j (z − a_j)(z − b_j)) that is continuous off E
and behaves like z^(g+1) at +∞. It is assembled from one factor per arc: the
Möbius map h(z) = (z − α)/(z − β) sends the arc [α, β] onto a ray from 0 to
∞, and sqrt(h) is taken with its cut turned onto that ray. The sign of each
factor is fixed at infinity.

Divisor JSON form:
    {"divisor": [{"angle": <radians>, "sheet": 1 | -1}, ...]}
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from .arcset import TWO_PI, ArcSet, angle_gap, canonical_angle
from .errors import InputError, PointOffGap, WrongGapCount
from .moebius import as_complex_array, restore

logger = logging.getLogger(__name__)

# Side selector for one-sided boundary values on E
BOUNDARY_DELTA = 1e-7

# Angles closer than this to a gap endpoint count as the branch point
BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class ArcFactor:
    """sqrt((z − α)(z − β)) with its cut on the arc from α to β."""

    alpha: complex
    beta: complex
    rotation: complex
    half_turn: complex
    scale: complex

    @classmethod
    def for_arc(cls, alpha: complex, beta: complex, midpoint: complex) -> "ArcFactor":
        # h maps the arc onto the ray arg h = psi; the rotated principal root cuts along it
        psi = np.angle((midpoint - alpha) / (midpoint - beta))
        rotation = np.exp(-1j * (psi + np.pi))
        half_turn = np.exp(0.5j * (psi + np.pi))
        scale = half_turn * np.sqrt(rotation)
        return cls(complex(alpha), complex(beta), complex(rotation), complex(half_turn), complex(scale))

    def rotated_h(self, z: np.ndarray) -> np.ndarray:
        """h(z) turned so that the arc lies on the negative real axis."""
        return (z - self.alpha) / (z - self.beta) * self.rotation

    def __call__(self, z: np.ndarray) -> np.ndarray:
        root = self.half_turn * np.sqrt(self.rotated_h(z))
        return (z - self.beta) * root / self.scale


@dataclass(frozen=True)
class HyperellipticCurve:
    """The double of C̄ ∖ E with ramification points {a_j, b_j}."""

    arcset: ArcSet
    branch_points: np.ndarray
    factors: Tuple[ArcFactor, ...]

    @property
    def genus(self) -> int:
        return self.arcset.genus

    def polynomial(self, z) -> np.ndarray:
        """∏_j (z − a_j)(z − b_j)."""
        z = np.asarray(z, dtype=complex)
        out = np.ones_like(z)
        for p in self.branch_points:
            out = out * (z - p)
        return out

    def w(self, z):
        return evaluate_w(self, z)


def build_curve(E: ArcSet) -> HyperellipticCurve:
    """Assemble the per-arc square-root factors of w."""
    factors = tuple(
        ArcFactor.for_arc(arc.start, arc.end, complex(np.exp(1j * arc.midpoint_angle)))
        for arc in E.arcs
    )
    curve = HyperellipticCurve(arcset=E, branch_points=E.branch_points, factors=factors)
    logger.debug("Built curve of genus %d", curve.genus)
    return curve


def evaluate_w(curve: HyperellipticCurve, z):
    """
    w(z) on the physical branch; infinite input gives infinity.

    Points of E lie on the cuts, so the value there is one of the two one-sided
    limits; use boundary_w for a defined side.
    """
    shape = np.shape(z)
    values, scalar = as_complex_array(z)
    out = np.full(values.shape, complex(np.inf))
    finite = np.isfinite(values)
    v = values[finite]
    acc = np.ones_like(v)
    with np.errstate(divide="ignore", invalid="ignore"):
        for factor in curve.factors:
            acc = acc * factor(v)
    # Branch points themselves: the factor (z − β) sqrt(h) is 0/0 at β
    acc = np.where(np.isfinite(acc), acc, 0.0)
    out[finite] = acc
    return restore(out, scalar, shape)


def boundary_w(curve: HyperellipticCurve, z, delta: float = BOUNDARY_DELTA):
    """
    One-sided value of w on E from inside the unit disk.

    Off E this is w itself. On arc j the other factors are continuous and the
    own factor is the square root taken on the side of its cut that faces the
    disk; that side is read once per arc at (1 − δ) times the arc midpoint.
    """
    shape = np.shape(z)
    values, scalar = as_complex_array(z)
    out = np.asarray(evaluate_w(curve, values), dtype=complex).copy()
    angles = np.mod(np.angle(values), TWO_PI)
    on_circle = np.abs(np.abs(values) - 1.0) <= 1e-12

    for j, arc in enumerate(curve.arcset.arcs):
        offset = np.mod(angles - arc.start_angle, TWO_PI)
        mask = on_circle & (offset <= arc.length)
        if not np.any(mask):
            continue
        v = values[mask]
        acc = np.ones_like(v)
        for k, factor in enumerate(curve.factors):
            if k != j:
                acc = acc * factor(v)
        own = curve.factors[j]
        inside = (1.0 - delta) * complex(np.exp(1j * arc.midpoint_angle))
        side = np.sign(np.imag(own.rotated_h(np.array([inside])))[0])
        root = own.half_turn * 1j * side * np.sqrt(np.abs(own.rotated_h(v)))
        out[mask] = acc * (v - own.beta) * root / own.scale
    return restore(out, scalar, shape)


# ============================================================================
# Surface points and divisors
# ============================================================================

@dataclass(frozen=True)
class SurfacePoint:
    """Point (z, sheet) of the double; sheet +1 is where Ω lives."""

    z: complex
    sheet: int

    @property
    def angle(self) -> float:
        return canonical_angle(float(np.angle(self.z)))


@dataclass(frozen=True)
class Divisor:
    """One point per closed gap, ordered by gap index."""

    points: Tuple[SurfacePoint, ...]
    branch: Tuple[bool, ...] = ()

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def locations(self) -> np.ndarray:
        return np.array([p.z for p in self.points])

    @property
    def angles(self) -> np.ndarray:
        return np.array([p.angle for p in self.points])

    @property
    def sheets(self) -> np.ndarray:
        return np.array([p.sheet for p in self.points])

    @classmethod
    def from_angles(cls, angles: Sequence[float], sheets: Sequence[int]) -> "Divisor":
        return cls(tuple(SurfacePoint(complex(np.exp(1j * a)), int(s))
                         for a, s in zip(angles, sheets)))

    def to_dict(self) -> dict:
        return {"divisor": [{"angle": p.angle, "sheet": p.sheet} for p in self.points]}

    def label(self) -> str:
        return " ".join(f"({a:.6f},{s:+d})" for a, s in zip(self.angles, self.sheets))


def divisor_validate(curve: HyperellipticCurve, D: Divisor) -> Divisor:
    """
    Check one point per closed gap and canonicalize signs at branch points.

    Returns:
        Divisor ordered by gap index, with the branch flag per point and points
        snapped exactly onto a_j or b_j when within 1e-12 radians

    Raises:
        WrongGapCount: if the gaps are not hit exactly once each
        PointOffGap: if a point is off the unit circle or inside E
    """
    E = curve.arcset
    if len(D) != E.genus + 1:
        raise WrongGapCount(f"divisor needs {E.genus + 1} points, got {len(D)}",
                            {"expected": E.genus + 1, "got": len(D)})

    slots: List[Tuple[SurfacePoint, bool]] = [None] * (E.genus + 1)
    for point in D:
        if point.sheet not in (1, -1):
            raise InputError("sheet must be +1 or -1", {"sheet": point.sheet})
        if abs(abs(point.z) - 1.0) > 1e-10:
            raise PointOffGap("divisor point is not on the unit circle", {"z": point.z})
        phi = point.angle
        j = E.gap_of(phi, closed=True)
        if j < 0:
            raise PointOffGap("divisor point lies inside E", {"angle": phi})
        if slots[j] is not None:
            raise WrongGapCount("two divisor points in one gap", {"gap": j})

        gap = E.gaps[j]
        sheet = point.sheet
        z = point.z
        at_branch = False
        for end_angle, end in ((gap.start_angle, gap.a), (gap.end_angle, gap.b)):
            if angle_gap(phi, end_angle) <= BRANCH_TOL:
                at_branch = True
                z = end
                if sheet != 1:
                    logger.debug("divisor sign at branch point of gap %d set to +1", j)
                sheet = 1
        slots[j] = (SurfacePoint(complex(z), sheet), at_branch)

    points = tuple(s[0] for s in slots)
    branch = tuple(s[1] for s in slots)
    return Divisor(points, branch)


def divisor_from_dict(data: dict) -> Divisor:
    if not isinstance(data, dict) or "divisor" not in data:
        raise InputError("divisor file must contain a 'divisor' list")
    try:
        angles = [float(item["angle"]) for item in data["divisor"]]
        sheets = [int(item.get("sheet", 1)) for item in data["divisor"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed divisor entry: {e}")
    return Divisor.from_angles(angles, sheets)


def load_divisor(path: Union[str, Path]) -> Divisor:
    """Read a divisor JSON file (not yet validated against a curve)."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"divisor file not found: {path}")
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"divisor file {path} is not valid JSON: {e}")
    return divisor_from_dict(data)
