"""
The one-arc Hardy-space model.

For a single arc the covering group is trivial, the reproducing kernel of
the Hardy space H² of the disk is k(ζ, η) = 1/(1 − ζ conj(η)), and every object
of the kernel recurrence is explicit. This module builds those objects for
ζ₀ = i r and checks the kernel identities numerically at random disk points.

    covering_map          ζ ↦ z, the disk onto C̄ ∖ E
    covering_map_inverse  z ↦ ζ, root of z(ζ) = z inside the disk
    blaschke              Blaschke factor with a positivity normalization
    schur_fn_onearc       s(z) = (1 − ζ conj ζ₀)/(1 − ζ ζ₀)
    lambda_of_zeta        λ-map pulled back to the disk
    r_function            r(λ) = (λB)(0)/B(ζ)

Usage:
    space = OneArcSpace(0.5)
    report = verify_all(space, samples=500, seed=42)
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from .arcset import ArcSet, onearc_arcset
from .errors import NormalizationVanishes, PoleAtConjZeta0
from .moebius import (
    AnalyticFn,
    as_complex_array,
    cauchy_mean,
    cayley_schur_to_caratheodory,
    lambda_map,
    restore,
)

logger = logging.getLogger(__name__)

# Random verification points avoid the pole of 1/B at 0 and the disk edge
SAMPLE_MIN_RADIUS = 0.05
SAMPLE_MAX_RADIUS = 0.95

POLE_TOL = 1e-14
RAY_MODULI = np.array([1e2, 1e4, 1e6])


@dataclass(frozen=True)
class OneArcSpace:
    """One-arc model with ζ₀ = i r."""

    r: float

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"r must lie in (0, 1), got {self.r}")

    @property
    def zeta0(self) -> complex:
        return 1j * self.r

    @property
    def sin_theta(self) -> float:
        return (1.0 - self.r ** 2) / (1.0 + self.r ** 2)

    @property
    def theta(self) -> float:
        return float(np.arcsin(self.sin_theta))

    @property
    def b0(self) -> complex:
        return complex(np.exp(2j * self.theta))

    @property
    def a0(self) -> complex:
        return self.b0.conjugate()

    def arcset(self) -> ArcSet:
        return onearc_arcset(self.theta)


@dataclass(frozen=True)
class KernelPair:
    """Szegő kernel of H² and its normalization K = k / sqrt(k(η, η))."""

    @staticmethod
    def k(zeta, eta):
        return 1.0 / (1.0 - np.asarray(zeta) * np.conj(eta))

    @staticmethod
    def K(zeta, eta):
        return KernelPair.k(zeta, eta) * np.sqrt(1.0 - np.abs(eta) ** 2)


KERNELS = KernelPair()


# ============================================================================
# Covering map and Blaschke factors
# ============================================================================

def covering_map(space: OneArcSpace, zeta, strict: bool = False):
    """
    z(ζ) = −(ζ − ζ₀)(1 − ζζ₀) / ((ζ − conj ζ₀)(1 − ζ conj ζ₀)).

    The constant factor (1 − conj(ζ₀)²)/(1 − ζ₀²) equals 1 for ζ₀ = i r.

    Args:
        space: One-arc model
        zeta: Disk point(s)
        strict: Raise instead of returning infinity at conj ζ₀

    Raises:
        PoleAtConjZeta0: if strict and some ζ equals conj ζ₀
    """
    shape = np.shape(zeta)
    values, scalar = as_complex_array(zeta)
    z0 = space.zeta0
    z0c = np.conj(z0)

    den = (values - z0c) * (1.0 - values * z0c)
    pole = np.abs(den) < POLE_TOL
    if strict and np.any(pole):
        raise PoleAtConjZeta0("covering map evaluated at conj ζ₀", {"zeta": values[pole][0]})

    out = np.full(values.shape, complex(np.inf))
    ok = ~pole
    out[ok] = -(values[ok] - z0) * (1.0 - values[ok] * z0) / den[ok]
    return restore(out, scalar, shape)


def covering_map_inverse(space: OneArcSpace, z):
    """
    The root inside the disk of z(ζ) = z.

    The equation reduces to t ζ² − ζ + t = 0 with
    t = i r (1 − z) / ((1 − r²)(1 + z)). The roots are reciprocal; the
    principal square root picks the one of smaller modulus.
    """
    shape = np.shape(z)
    values, scalar = as_complex_array(z)
    r = space.r
    out = np.empty_like(values)

    infinite = ~np.isfinite(values)
    at_minus_one = np.abs(values + 1.0) < POLE_TOL
    regular = ~infinite & ~at_minus_one

    v = values[regular]
    t = 1j * r * (1.0 - v) / ((1.0 - r ** 2) * (1.0 + v))
    out[regular] = 2.0 * t / (1.0 + np.sqrt(1.0 - 4.0 * t * t))
    out[infinite] = np.conj(space.zeta0)
    out[at_minus_one] = 1j
    return restore(out, scalar, shape)


def blaschke(zeta, center: complex, normalization_point: complex):
    """
    u (ζ − c) / (1 − conj(c) ζ) with |u| = 1 fixed by a positive value at
    normalization_point.

    Raises:
        NormalizationVanishes: if normalization_point equals center
    """
    center = complex(center)
    p = complex(normalization_point)
    ref = (p - center) / (1.0 - np.conj(center) * p)
    if abs(ref) < POLE_TOL:
        raise NormalizationVanishes("normalization point coincides with the center",
                                    {"center": center})
    u = np.conj(ref) / abs(ref)
    zeta = np.asarray(zeta, dtype=complex)
    return u * (zeta - center) / (1.0 - np.conj(center) * zeta)


def green_factors(space: OneArcSpace) -> Tuple[AnalyticFn, AnalyticFn]:
    """B(ζ, ζ₀) and B(ζ, conj ζ₀) normalized by B(conj ζ₀, ζ₀) > 0, B(ζ₀, conj ζ₀) > 0."""
    z0 = space.zeta0
    z0c = np.conj(z0)
    b_plus = AnalyticFn(lambda zeta: blaschke(zeta, z0, z0c), name="B(., zeta0)")
    b_minus = AnalyticFn(lambda zeta: blaschke(zeta, z0c, z0), name="B(., conj zeta0)")
    return b_plus, b_minus


# ============================================================================
# Schur and Carathéodory functions of the model
# ============================================================================

def schur_fn_onearc(space: OneArcSpace) -> AnalyticFn:
    """s(z) = K(ζ, conj ζ₀)/K(ζ, ζ₀) = (1 − ζ conj ζ₀)/(1 − ζ ζ₀), ζ = ζ(z)."""
    z0 = space.zeta0

    def s(z):
        zeta = covering_map_inverse(space, z)
        return (1.0 - zeta * np.conj(z0)) / (1.0 - zeta * z0)

    return AnalyticFn(s, domain="slit", name=f"onearc s, r={space.r}")


def caratheodory_fn_onearc(space: OneArcSpace, tau: complex = 1.0) -> AnalyticFn:
    return cayley_schur_to_caratheodory(schur_fn_onearc(space), tau)


# ============================================================================
# λ-map and r-function
# ============================================================================

def lambda_of_zeta(space: OneArcSpace, zeta):
    """λ(ζ) = λ_E(z(ζ)) for the λ-map anchored at zref = z(0) = 1."""
    lam = lambda_map(space.arcset(), 1.0)
    return lam(covering_map(space, zeta))


def lambda0(space: OneArcSpace) -> complex:
    return complex(lambda_of_zeta(space, space.zeta0))


def lemma_blaschke(space: OneArcSpace) -> Tuple[complex, float]:
    """
    Unimodular u and the constant (λB)(0) for B(ζ) = u ζ.

    λ has a simple pole at ζ = 0, so (ζλ)(0) is a Cauchy mean; u rotates it
    onto the positive axis.
    """
    c = complex(cauchy_mean(lambda zeta: zeta * lambda_of_zeta(space, zeta),
                            np.zeros(1), radius=0.1, points=32)[0])
    if abs(c) < POLE_TOL:
        raise NormalizationVanishes("λ has no pole at ζ = 0")
    u = np.conj(c) / abs(c)
    return complex(u), float(abs(c))


def zeta_of_lambda(space: OneArcSpace, lam):
    """
    Root inside the disk of λ(ζ) = λ for the one-arc λ-map.

    In the one-arc model λ(ζ) = c (ζ + 1/ζ) with c = (ζλ)(0), so the two
    preimages are reciprocal; the small one is the inverse of the large one.
    """
    shape = np.shape(lam)
    values, scalar = as_complex_array(lam)
    u, L = lemma_blaschke(space)
    c = L / u
    w = values / (2.0 * c)
    s = np.sqrt(w * w - 1.0)
    big = np.where(np.abs(w + s) >= np.abs(w - s), w + s, w - s)
    return restore(1.0 / big, scalar, shape)


def r_function(space: OneArcSpace) -> AnalyticFn:
    """r(λ) = (λB)(0) / B(ζ(λ)), defined on the upper half-plane."""
    u, L = lemma_blaschke(space)

    def r(lam):
        zeta = zeta_of_lambda(space, lam)
        return L / (u * zeta)

    return AnalyticFn(r, domain="halfplane", name=f"r, r={space.r}")


def r_caratheodory(space: OneArcSpace) -> AnalyticFn:
    """(r(λ) − Re r(λ₀)) / (i Im r(λ₀)) as a function of z."""
    u, L = lemma_blaschke(space)
    r0 = L / (u * space.zeta0)

    def m(z):
        zeta = covering_map_inverse(space, z)
        return (L / (u * zeta) - r0.real) / (1j * r0.imag)

    return AnalyticFn(m, domain="slit", name=f"r-representation, r={space.r}")


# ============================================================================
# Verifiers
# ============================================================================

def random_disk_points(rng: np.random.Generator, count: int,
                       rmin: float = SAMPLE_MIN_RADIUS,
                       rmax: float = SAMPLE_MAX_RADIUS) -> np.ndarray:
    """Points uniform in area on the annulus rmin ≤ |ζ| ≤ rmax."""
    radius = np.sqrt(rng.uniform(rmin ** 2, rmax ** 2, count))
    angle = rng.uniform(0.0, 2.0 * np.pi, count)
    return radius * np.exp(1j * angle)


def theorem1_coefficients(space: OneArcSpace) -> Tuple[complex, float]:
    z0 = space.zeta0
    a = complex(KERNELS.K(z0, np.conj(z0)) / KERNELS.K(z0, z0))
    return a, float(np.sqrt(1.0 - abs(a) ** 2))


def verify_theorem1(space: OneArcSpace, samples: int, seed: int = 0) -> float:
    """
    Max residual of the two-term kernel expansions and their matrix form.

    Checks
        K(ζ, ζ̄₀) = a K(ζ, ζ₀) + ρ B(ζ, ζ₀) K(ζ, ζ̄₀)
        K(ζ, ζ₀) = ā K(ζ, ζ̄₀) + ρ B(ζ, ζ̄₀) K(ζ, ζ₀)
    the recurrence B(ζ, ζ₀)[K, −K̄] = [K, −K̄] ρ⁻¹ [[1, a], [ā, 1]] diag(z, 1),
    and ρ = B(ζ̄₀, ζ₀).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    zeta = random_disk_points(rng, samples)
    z0 = space.zeta0
    z0c = np.conj(z0)
    a, rho = theorem1_coefficients(space)
    b_plus, b_minus = green_factors(space)

    k_plus = KERNELS.K(zeta, z0)
    k_minus = KERNELS.K(zeta, z0c)
    bp = b_plus(zeta)
    bm = b_minus(zeta)

    first = k_minus - (a * k_plus + rho * bp * k_minus)
    second = k_plus - (np.conj(a) * k_minus + rho * bm * k_plus)

    z = covering_map(space, zeta)
    left = bp[:, None] * np.column_stack([k_plus, -k_minus])
    coupling = np.array([[1.0, a], [np.conj(a), 1.0]]) / rho
    right = np.column_stack([k_plus, -k_minus]) @ coupling
    right[:, 0] *= z
    matrix = left - right

    byproduct = rho - complex(b_plus(z0c)) * KERNELS.K(z0c, z0c) / KERNELS.K(z0c, z0c)

    residual = max(np.max(np.abs(first)), np.max(np.abs(second)),
                   np.max(np.abs(matrix)), abs(byproduct))
    logger.debug("theorem1 residual %.3e (a = %s, rho = %.12f)", residual, a, rho)
    return float(residual)


def verify_kernel_lemma(space: OneArcSpace, samples: int, seed: int = 0) -> float:
    """
    Max residual of k(ζ, ζ₀) = (λB)(0) (1/B(ζ) − conj(1/B(ζ₀))) / (λ − conj λ₀).

    With a trivial group k(ζ) = k(ζ, 0) ≡ 1, so the character-twisted kernels
    all drop out.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    zeta = random_disk_points(rng, samples)
    z0 = space.zeta0
    u, L = lemma_blaschke(space)
    lam0 = lambda0(space)

    lam = lambda_of_zeta(space, zeta)
    rhs = L * (1.0 / (u * zeta) - np.conj(1.0 / (u * z0))) / (lam - np.conj(lam0))
    lhs = KERNELS.k(zeta, z0)
    residual = float(np.max(np.abs(lhs - rhs)))
    logger.debug("kernel lemma residual %.3e, (lambda B)(0) = %.12f", residual, L)
    return residual


def verify_lambda_representation(space: OneArcSpace, samples: int, seed: int = 0) -> float:
    """Max residual of z = B(0, ζ₀)/B(0, ζ̄₀) · (λ − λ₀)/(λ − conj λ₀)."""
    rng = np.random.default_rng(seed)
    zeta = random_disk_points(rng, samples)
    b_plus, b_minus = green_factors(space)
    const = complex(b_plus(0.0)) / complex(b_minus(0.0))
    lam0 = lambda0(space)
    lam = lambda_of_zeta(space, zeta)
    rhs = const * (lam - lam0) / (lam - np.conj(lam0))
    return float(np.max(np.abs(covering_map(space, zeta) - rhs)))


def tau_of_alpha(space: OneArcSpace) -> complex:
    """τ = {B(0, ζ₀) k(ζ₀, 0) / (B(0, ζ̄₀) k(0, ζ₀))}⁻¹."""
    b_plus, b_minus = green_factors(space)
    z0 = space.zeta0
    c = complex(b_plus(0.0)) * KERNELS.k(z0, 0.0) / (complex(b_minus(0.0)) * KERNELS.k(0.0, z0))
    return complex(1.0 / c)


def verify_recurrence_corollaries(space: OneArcSpace, samples: int,
                                  seed: int = 0) -> Dict[str, float]:
    """
    Residuals of the r-function corollaries at random disk points.

    Returns:
        Dictionary with keys
            zs_ratio         z s(z) against its kernel and r-ratio forms
            m_representation M(z; τ(α)) against (r − Re r₀)/(i Im r₀)
            r_asymptotic     max |r(λ) − λ|/|λ| for |λ| ∈ {1e4, 1e6}
            r_offset_growth  growth of |r(λ) − λ| along the ray, see ray_normalization
    """
    rng = np.random.default_rng(seed)
    zeta = random_disk_points(rng, samples)
    z0 = space.zeta0
    b_plus, b_minus = green_factors(space)
    u, L = lemma_blaschke(space)
    lam0 = lambda0(space)
    const = complex(b_plus(0.0)) / complex(b_minus(0.0))

    z = covering_map(space, zeta)
    s = (1.0 - zeta * np.conj(z0)) / (1.0 - zeta * z0)
    zs = z * s
    lam = lambda_of_zeta(space, zeta)

    # kernel forms: k(ζ) ≡ 1 and B(ζ) = u ζ
    via_lambda = const * (lam - lam0) / (lam - np.conj(lam0)) * KERNELS.K(zeta, np.conj(z0)) / KERNELS.K(zeta, z0)
    inv_b = 1.0 / (u * zeta)
    inv_b0 = 1.0 / (u * z0)
    via_kernels = const * (inv_b - inv_b0) / (inv_b - np.conj(inv_b0))

    r = L * inv_b
    r0 = L * inv_b0
    tau = tau_of_alpha(space)
    via_r = (r - r0) / (r - np.conj(r0)) / tau
    zs_ratio = max(np.max(np.abs(zs - via_lambda)), np.max(np.abs(zs - via_kernels)),
                   np.max(np.abs(zs - via_r)))

    m_direct = (1.0 + tau * zs) / (1.0 - tau * zs)
    m_from_r = (r - r0.real) / (1j * r0.imag)
    m_representation = float(np.max(np.abs(m_direct - m_from_r) / np.maximum(1.0, np.abs(m_direct))))

    r_asymptotic, r_offset_growth = ray_normalization(r_function(space))

    return {
        "zs_ratio": float(zs_ratio),
        "m_representation": m_representation,
        "r_asymptotic": r_asymptotic,
        "r_offset_growth": r_offset_growth,
    }


def ray_normalization(rfn: Callable) -> Tuple[float, float]:
    """
    Normalization residuals of r(λ) = λ + O(1/λ) along the imaginary axis.

    Returns:
        (max |r(λ) − λ|/|λ| for |λ| ∈ {1e4, 1e6},
         increase of |r(λ) − λ| from |λ| = 1e2 to 1e4 and 1e6, relative to
         max(1, |r(1e2 i) − 1e2 i|))
    """
    big = 1j * RAY_MODULI
    offsets = np.abs(np.asarray(rfn(big), dtype=complex) - big)
    asymptotic = float(np.max(offsets[1:] / RAY_MODULI[1:]))
    growth = float(max(0.0, np.max(offsets[1:]) - offsets[0]) / max(1.0, offsets[0]))
    return asymptotic, growth


def verify_unimodularity(space: OneArcSpace, count: int = 50,
                         delta: float = 1e-7) -> Dict[str, float]:
    """
    Boundary behavior of s on the unit circle.

    Returns:
        gap_modulus_defect  max ||s| − 1| at count interior points of the gap
        e_modulus_excess    max (|s| − 1) at radius 1 − delta over count points of E
    """
    s = schur_fn_onearc(space)
    gap = space.arcset().gaps[0]
    on_gap = np.exp(1j * gap.interior_angles(count, 0.01))
    arc = space.arcset().arcs[0]
    phi = arc.start_angle + arc.length * (np.arange(count) + 0.5) / count
    near_e = (1.0 - delta) * np.exp(1j * phi)
    return {
        "gap_modulus_defect": float(np.max(np.abs(np.abs(s(on_gap)) - 1.0))),
        "e_modulus_excess": float(max(0.0, np.max(np.abs(s(near_e)) - 1.0))),
    }


def default_thresholds(tolerance: float = 1e-9) -> Dict[str, float]:
    """Pass thresholds per report key; identities share one tolerance."""
    identities = ("theorem1", "kernel_lemma", "lambda_representation",
                  "kernel_norm_equality", "rho_byproduct", "zs_ratio", "m_representation")
    thresholds = {key: tolerance for key in identities}
    thresholds["r_asymptotic"] = 1e-6
    thresholds["gap_modulus_defect"] = 1e-8
    thresholds["e_modulus_excess"] = 1e-8
    thresholds["r_offset_growth"] = 1e-6
    return thresholds


def verify_all(space: OneArcSpace, samples: int = 500, seed: int = 42,
               tolerance: float = 1e-9) -> Dict[str, object]:
    """Run every verifier and collect values, residuals and pass flags in one report."""
    z0 = space.zeta0
    a, rho = theorem1_coefficients(space)
    u, L = lemma_blaschke(space)
    lam0 = lambda0(space)
    b_plus, _ = green_factors(space)

    residuals = {
        "theorem1": verify_theorem1(space, samples, seed),
        "kernel_lemma": verify_kernel_lemma(space, samples, seed + 1),
        "lambda_representation": verify_lambda_representation(space, samples, seed + 2),
        "kernel_norm_equality": float(abs(KERNELS.K(z0, z0) - KERNELS.K(np.conj(z0), np.conj(z0)))),
        "rho_byproduct": float(abs(rho - complex(b_plus(np.conj(z0))))),
    }
    residuals.update(verify_recurrence_corollaries(space, samples, seed + 3))
    residuals.update(verify_unimodularity(space))
    thresholds = default_thresholds(tolerance)
    failed = sorted(key for key, value in residuals.items() if not value <= thresholds[key])

    logger.info("one-arc verification at r = %g: %d checks, %d failed", space.r,
                len(residuals), len(failed))
    return {
        "passed": not failed,
        "failed": failed,
        "thresholds": thresholds,
        "r": space.r,
        "theta": space.theta,
        "a0": [space.a0.real, space.a0.imag],
        "b0": [space.b0.real, space.b0.imag],
        "a": [a.real, a.imag],
        "rho": rho,
        "lambda0": [lam0.real, lam0.imag],
        "lambda_B_at_0": L,
        "tau": [tau_of_alpha(space).real, tau_of_alpha(space).imag],
        "residuals": residuals,
    }
