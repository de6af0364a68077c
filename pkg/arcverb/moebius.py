"""
Möbius transforms between Schur and Carathéodory functions.

    cayley_schur_to_caratheodory   M = (1 + zτs) / (1 − zτs)
    cayley_caratheodory_to_schur   f = (M − 1) / (z(M + 1))
    theta_family                   M_θ, the Cayley image of z·f ↦ e^{iθ}·z·f
    lambda_map                     three-point map a₀ → 1, zref → ∞, b₀ → −1
"""

import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .arcset import ArcSet
from .errors import (
    DegenerateMoebius,
    NotNormalized,
    PoleEncountered,
    RefPointNotInGap,
)

logger = logging.getLogger(__name__)

DOMAINS = ("disk", "exterior", "slit", "halfplane")

# Below this modulus the Schur quotient (M − 1)/z is evaluated by a Cauchy mean
SMALL_Z = 1e-4
CAUCHY_RADIUS = 1e-2
CAUCHY_POINTS = 16

POLE_TOL = 1e-14
NORMALIZATION_TOL = 1e-10


def as_complex_array(z) -> Tuple[np.ndarray, bool]:
    """Return z as a 1-d complex array and whether the input was scalar."""
    arr = np.asarray(z, dtype=complex)
    return np.atleast_1d(arr).ravel(), arr.ndim == 0


def restore(values: np.ndarray, scalar: bool, shape=None):
    if scalar:
        return complex(values[0])
    return values if shape is None else values.reshape(shape)


class AnalyticFn:
    """
    Evaluable analytic function with a domain tag.

    The wrapped callable must accept numpy arrays. Instances hold no mutable
    state, so concurrent evaluation is safe.
    """

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], domain: str = "disk",
                 name: str = ""):
        if domain not in DOMAINS:
            raise ValueError(f"unknown domain '{domain}', expected one of {DOMAINS}")
        self._func = func
        self.domain = domain
        self.name = name

    def __call__(self, z):
        shape = np.shape(z)
        values, scalar = as_complex_array(z)
        out = np.asarray(self._func(values), dtype=complex)
        return restore(np.atleast_1d(out), scalar, shape)

    def __repr__(self):
        return f"AnalyticFn({self.name or 'anonymous'}, domain={self.domain})"


def cauchy_mean(func: Callable[[np.ndarray], np.ndarray], z: np.ndarray,
                radius: float = CAUCHY_RADIUS, points: int = CAUCHY_POINTS) -> np.ndarray:
    """
    Values of func at points z with |z| < radius from samples on |ζ| = radius.

    Trapezoidal Cauchy integral: f(z) ≈ mean_k f(ζ_k) ζ_k / (ζ_k − z).
    At z = 0 this is the plain mean value.
    """
    ring = radius * np.exp(2j * np.pi * np.arange(points) / points)
    samples = np.asarray(func(ring), dtype=complex)
    z = np.asarray(z, dtype=complex)
    kernel = ring[None, :] / (ring[None, :] - z[:, None])
    return (samples[None, :] * kernel).mean(axis=1)


# ============================================================================
# Möbius maps
# ============================================================================

@dataclass(frozen=True)
class MoebiusMap:
    """z ↦ (az + b)/(cz + d), coefficients scaled so the largest modulus is 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def normalized(cls, a, b, c, d) -> "MoebiusMap":
        coeffs = np.array([a, b, c, d], dtype=complex)
        scale = np.max(np.abs(coeffs))
        if scale == 0.0:
            raise DegenerateMoebius("all coefficients vanish")
        coeffs = coeffs / scale
        det = coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2]
        if abs(det) <= 1e-14:
            raise DegenerateMoebius("determinant vanishes", {"det": det})
        return cls(*(complex(v) for v in coeffs))

    @classmethod
    def from_matrix(cls, h: np.ndarray) -> "MoebiusMap":
        return cls.normalized(h[0, 0], h[0, 1], h[1, 0], h[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z):
        shape = np.shape(z)
        values, scalar = as_complex_array(z)
        out = np.empty_like(values)
        finite = np.isfinite(values)
        num = self.a * values[finite] + self.b
        den = self.c * values[finite] + self.d
        with np.errstate(divide="ignore", invalid="ignore"):
            image = np.where(np.abs(den) <= 1e-300, complex(np.inf), num / np.where(den == 0, 1, den))
        out[finite] = image
        # The point at infinity goes to a/c
        out[~finite] = complex(np.inf) if self.c == 0 else self.a / self.c
        return restore(out, scalar, shape)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap.normalized(self.d, -self.b, -self.c, self.a)

    def compose(self, inner: "MoebiusMap") -> "MoebiusMap":
        """Return self ∘ inner."""
        return MoebiusMap.from_matrix(self.matrix @ inner.matrix)

    @classmethod
    def from_three_points(cls, source, target) -> "MoebiusMap":
        """
        The unique map sending source[k] to target[k], k = 0, 1, 2.

        The third point of either triple may be infinite.
        """
        s = _cross_ratio_matrix(*source)
        t = _cross_ratio_matrix(*target)
        return cls.from_matrix(np.linalg.inv(t) @ s)


def _cross_ratio_matrix(p1, p2, p3) -> np.ndarray:
    """Matrix of the map sending p1 → 0, p2 → 1, p3 → ∞."""
    if np.isinf(p3):
        return np.array([[1.0, -p1], [0.0, p2 - p1]], dtype=complex)
    return np.array([[p2 - p3, -p1 * (p2 - p3)],
                     [p2 - p1, -p3 * (p2 - p1)]], dtype=complex)


# ============================================================================
# Cayley transforms
# ============================================================================

def cayley_schur_to_caratheodory(s: Callable, tau: complex = 1.0) -> AnalyticFn:
    """
    Carathéodory function M(z) = (1 + zτs(z)) / (1 − zτs(z)).

    Args:
        s: Schur-class evaluator
        tau: Unimodular rotation

    Returns:
        AnalyticFn with M(0) = 1

    Raises:
        PoleEncountered: if 1 − zτs(z) vanishes at an evaluation point
    """
    tau = complex(tau)
    if abs(abs(tau) - 1.0) > 1e-12:
        raise ValueError(f"tau must be unimodular, got |tau| = {abs(tau)}")
    domain = getattr(s, "domain", "disk")

    def caratheodory(z):
        zts = z * tau * s(z)
        den = 1.0 - zts
        bad = np.abs(den) < POLE_TOL
        if np.any(bad):
            raise PoleEncountered("1 − zτs(z) vanishes", {"point": z[bad][0]})
        return (1.0 + zts) / den

    return AnalyticFn(caratheodory, domain=domain, name="caratheodory")


def cayley_caratheodory_to_schur(M: Callable) -> AnalyticFn:
    """
    Schur function f(z) = (M(z) − 1) / (z(M(z) + 1)) of a normalized M.

    The removable singularity at 0 is handled by a 16-point Cauchy mean on
    |ζ| = 1e-2 for |z| < 1e-4.

    Raises:
        NotNormalized: if |M(0) − 1| > 1e-10
        PoleEncountered: if M(z) = −1 at an evaluation point
    """
    m0 = complex(M(0.0))
    if abs(m0 - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized("M(0) must equal 1", {"M(0)": m0})
    domain = getattr(M, "domain", "disk")

    def direct(z):
        m = np.asarray(M(z), dtype=complex)
        bad = np.abs(m + 1.0) < POLE_TOL
        if np.any(bad):
            raise PoleEncountered("M(z) = −1", {"point": z[bad][0]})
        return (m - 1.0) / (z * (m + 1.0))

    def schur(z):
        out = np.empty_like(z)
        small = np.abs(z) < SMALL_Z
        if np.any(~small):
            out[~small] = direct(z[~small])
        if np.any(small):
            out[small] = cauchy_mean(direct, z[small])
        return out

    return AnalyticFn(schur, domain=domain, name="schur")


def theta_family(M: Callable, theta: float) -> AnalyticFn:
    """
    M_θ = (cos(θ/2) M − i sin(θ/2)) / (−i sin(θ/2) M + cos(θ/2)).

    M_0 = M, and (M_θ)_φ = M_{θ+φ} modulo 2π. The family preserves
    M(0) = 1 and M(∞) = −1.
    """
    theta = float(np.mod(theta, 2.0 * np.pi))
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    domain = getattr(M, "domain", "disk")

    def rotated(z):
        m = np.asarray(M(z), dtype=complex)
        den = -1j * s * m + c
        bad = np.abs(den) < POLE_TOL
        if np.any(bad):
            raise PoleEncountered("θ-family denominator vanishes", {"point": z[bad][0], "theta": theta})
        return (c * m - 1j * s) / den

    return AnalyticFn(rotated, domain=domain, name=f"theta={theta:.6g}")


# ============================================================================
# λ-map
# ============================================================================

def lambda_map(E: ArcSet, zref: complex) -> MoebiusMap:
    """
    Map the unit circle onto the real line with a₀ → 1, zref → ∞, b₀ → −1.

    Args:
        E: Arcset whose gap 0 supplies a₀ and b₀
        zref: Unit-circle point strictly inside gap 0

    Returns:
        MoebiusMap sending the unit disk onto the upper half-plane

    Raises:
        RefPointNotInGap: if zref is not strictly inside gap 0
    """
    zref = complex(zref)
    gap = E.gaps[0]
    if abs(abs(zref) - 1.0) > 1e-12 or not gap.contains(float(np.angle(zref))):
        raise RefPointNotInGap("reference point must lie strictly inside gap 0", {"zref": zref})

    lam = MoebiusMap.from_three_points((gap.a, gap.b, zref), (1.0, -1.0, np.inf))

    anchors = lam(np.array([gap.a, gap.b]))
    if np.max(np.abs(anchors - np.array([1.0, -1.0]))) > 1e-12:
        raise DegenerateMoebius("λ-map misses its anchor points", {"anchors": anchors})
    # Gap 0 runs counterclockwise from a₀ to b₀ through zref, so the disk lands
    # in the upper half-plane
    lam0 = lam(0.0)
    if lam0.imag < 0.0:
        raise DegenerateMoebius("λ-map sends the disk to the lower half-plane", {"lambda(0)": lam0})

    logger.debug("λ-map built, λ(0) = %s", lam0)
    return lam
