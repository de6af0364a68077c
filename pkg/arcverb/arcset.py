"""
Arcsets on the unit circle.

An ArcSet is a finite union E of disjoint closed arcs together with the open
gaps that tile the rest of the circle. Gaps are numbered counterclockwise
starting from gap 0, the gap whose interior contains the point 1. Only
conjugation-symmetric arcsets are accepted; callers must rotate other sets
themselves.

JSON form:
    {"arcs": [{"start": <radians>, "end": <radians>}, ...]}
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import (
    AsymmetricArcSet,
    DegenerateArc,
    InputError,
    OverlappingArcs,
    PointOneInsideE,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

# Absolute tolerance for angle comparisons (radians)
ANGLE_TOL = 1e-12


def canonical_angle(phi: float) -> float:
    """Reduce an angle to [0, 2π)."""
    phi = float(np.mod(phi, TWO_PI))
    if phi >= TWO_PI - ANGLE_TOL:
        phi = 0.0
    return phi


def ccw_distance(start: float, end: float) -> float:
    """Counterclockwise angular distance from start to end, in [0, 2π)."""
    return float(np.mod(end - start, TWO_PI))


def angle_gap(phi: float, psi: float) -> float:
    """Unsigned distance between two angles on the circle."""
    d = ccw_distance(phi, psi)
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class Arc:
    """Closed arc traversed counterclockwise from start_angle to end_angle."""

    start_angle: float
    end_angle: float

    @classmethod
    def from_angles(cls, start: float, end: float) -> "Arc":
        return cls(canonical_angle(start), canonical_angle(end))

    @property
    def length(self) -> float:
        return ccw_distance(self.start_angle, self.end_angle)

    @property
    def start(self) -> complex:
        return complex(np.exp(1j * self.start_angle))

    @property
    def end(self) -> complex:
        return complex(np.exp(1j * self.end_angle))

    @property
    def midpoint_angle(self) -> float:
        return canonical_angle(self.start_angle + 0.5 * self.length)

    def contains(self, phi: float, tol: float = ANGLE_TOL) -> bool:
        """True if angle phi lies on the closed arc."""
        return ccw_distance(self.start_angle, phi) <= self.length + tol or \
            angle_gap(phi, self.start_angle) <= tol

    def conjugate(self) -> "Arc":
        return Arc.from_angles(-self.end_angle, -self.start_angle)


@dataclass(frozen=True)
class Gap:
    """Open gap (a, b) of the complement, traversed counterclockwise."""

    index: int
    start_angle: float
    length: float

    @property
    def a(self) -> complex:
        return complex(np.exp(1j * self.start_angle))

    @property
    def b(self) -> complex:
        return complex(np.exp(1j * (self.start_angle + self.length)))

    @property
    def end_angle(self) -> float:
        return canonical_angle(self.start_angle + self.length)

    @property
    def midpoint(self) -> complex:
        return complex(np.exp(1j * (self.start_angle + 0.5 * self.length)))

    def offset(self, phi: float) -> float:
        """Counterclockwise distance from the gap start to angle phi."""
        return ccw_distance(self.start_angle, phi)

    def contains(self, phi: float, closed: bool = False, tol: float = ANGLE_TOL) -> bool:
        """Test membership of angle phi in the open (or closed) gap."""
        d = self.offset(phi)
        if d > TWO_PI - tol:
            d -= TWO_PI
        if closed:
            return -tol <= d <= self.length + tol
        return tol < d < self.length - tol

    def interior_angles(self, count: int, margin: float = 0.0) -> np.ndarray:
        """Equally spaced interior angles of the gap, excluding the endpoints."""
        fractions = (np.arange(count) + 0.5) / count
        usable = self.length * (1.0 - 2.0 * margin)
        return self.start_angle + self.length * margin + usable * fractions


@dataclass(frozen=True)
class ArcSet:
    """Validated conjugation-symmetric union of arcs with its gap list."""

    arcs: Tuple[Arc, ...]
    gaps: Tuple[Gap, ...]

    @property
    def genus(self) -> int:
        return len(self.arcs) - 1

    @property
    def branch_points(self) -> np.ndarray:
        """The 2g+2 gap endpoints a_0, b_0, a_1, b_1, ..."""
        return np.array([p for gap in self.gaps for p in (gap.a, gap.b)])

    def contains_angle(self, phi: float, tol: float = ANGLE_TOL) -> bool:
        """True if e^{i phi} lies in E (closed arcs)."""
        return any(arc.contains(phi, tol) for arc in self.arcs)

    def gap_of(self, phi: float, closed: bool = True) -> int:
        """Index of the gap containing angle phi, or -1 if phi lies in E."""
        for gap in self.gaps:
            if gap.contains(phi, closed=closed):
                return gap.index
        return -1

    def conjugate(self) -> "ArcSet":
        return build_arcset([arc.conjugate() for arc in self.arcs], check_symmetry=False)

    def to_dict(self) -> dict:
        return {"arcs": [{"start": a.start_angle, "end": a.end_angle} for a in self.arcs]}


def build_arcset(arcs: Sequence[Arc], check_symmetry: bool = True) -> ArcSet:
    """
    Validate arcs and derive the gap list.

    Args:
        arcs: At least one Arc
        check_symmetry: Require invariance under complex conjugation

    Returns:
        ArcSet with gaps ordered counterclockwise from the gap containing 1

    Raises:
        DegenerateArc, OverlappingArcs, AsymmetricArcSet, PointOneInsideE
    """
    if len(arcs) == 0:
        raise InputError("at least one arc is required")

    arcs = [Arc.from_angles(a.start_angle, a.end_angle) for a in arcs]
    for arc in arcs:
        if arc.length <= ANGLE_TOL or arc.length >= TWO_PI - ANGLE_TOL:
            raise DegenerateArc(
                "arc has zero or full length",
                {"start": arc.start_angle, "end": arc.end_angle},
            )

    arcs.sort(key=lambda a: a.start_angle)

    # Consecutive arcs (cyclically) must leave a gap of positive length
    n = len(arcs)
    raw_gaps = []
    for i, arc in enumerate(arcs):
        following = arcs[(i + 1) % n]
        step = ccw_distance(arc.start_angle, following.start_angle) if n > 1 else TWO_PI
        gap_length = step - arc.length
        if gap_length <= ANGLE_TOL:
            raise OverlappingArcs(
                "arcs overlap or touch",
                {"arc": [arc.start_angle, arc.end_angle],
                 "next": [following.start_angle, following.end_angle]},
            )
        raw_gaps.append((arc.end_angle, gap_length))

    total = sum(a.length for a in arcs) + sum(g for _, g in raw_gaps)
    if abs(total - TWO_PI) > 1e-9:
        raise OverlappingArcs("arcs and gaps do not tile the circle", {"total": total})

    if any(arc.contains(0.0) for arc in arcs):
        raise PointOneInsideE("the point 1 lies in E")

    # Rotate the gap list so that gap 0 contains the point 1
    first = None
    for i, (start, length) in enumerate(raw_gaps):
        d = ccw_distance(start, 0.0)
        if ANGLE_TOL < d < length - ANGLE_TOL:
            first = i
            break
    if first is None:
        raise PointOneInsideE("no gap contains the point 1")

    ordered = raw_gaps[first:] + raw_gaps[:first]
    gaps = tuple(Gap(index=j, start_angle=start, length=length)
                 for j, (start, length) in enumerate(ordered))
    # Arc j lies between gap j and gap j+1
    ordered_arcs = tuple(arcs[(first + 1 + j) % n] for j in range(n))

    arcset = ArcSet(arcs=ordered_arcs, gaps=gaps)

    if check_symmetry and not _is_symmetric(arcset):
        raise AsymmetricArcSet(
            "arcset is not invariant under complex conjugation",
            {"arcs": arcset.to_dict()["arcs"]},
        )

    logger.debug("Built arcset with genus %d", arcset.genus)
    return arcset


def _is_symmetric(arcset: ArcSet, tol: float = 1e-10) -> bool:
    """Conjugation maps the set of arcs onto itself."""
    for arc in arcset.arcs:
        mirror = arc.conjugate()
        if not any(angle_gap(mirror.start_angle, other.start_angle) <= tol and
                   angle_gap(mirror.end_angle, other.end_angle) <= tol
                   for other in arcset.arcs):
            return False
    return True


def onearc_arcset(theta: float) -> ArcSet:
    """The one-arc set E = {e^{iφ}: 2θ ≤ φ ≤ 2π − 2θ}."""
    return build_arcset([Arc.from_angles(2.0 * theta, TWO_PI - 2.0 * theta)])


def arcset_from_dict(data: dict) -> ArcSet:
    """Build an ArcSet from the JSON schema {"arcs": [{"start":..,"end":..}]}."""
    if not isinstance(data, dict) or "arcs" not in data:
        raise InputError("arc file must contain an 'arcs' list")
    try:
        arcs = [Arc.from_angles(float(item["start"]), float(item["end"]))
                for item in data["arcs"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed arc entry: {e}")
    return build_arcset(arcs)


def load_arcset(path: Union[str, Path]) -> ArcSet:
    """Read an arcset JSON file."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"arc file not found: {path}")
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"arc file {path} is not valid JSON: {e}")
    return arcset_from_dict(data)


def symmetric_arcset(pairs: List[Tuple[float, float]]) -> ArcSet:
    """
    Build a symmetric arcset from upper-half arcs.

    Each (start, end) with 0 < start < end < π is mirrored to
    (2π − end, 2π − start). An arc crossing π (start < π < end) is its own
    mirror when start + end = 2π.
    """
    arcs = []
    for start, end in pairs:
        arc = Arc.from_angles(start, end)
        arcs.append(arc)
        mirror = arc.conjugate()
        if not (angle_gap(mirror.start_angle, arc.start_angle) <= ANGLE_TOL and
                angle_gap(mirror.end_angle, arc.end_angle) <= ANGLE_TOL):
            arcs.append(mirror)
    return build_arcset(arcs)
