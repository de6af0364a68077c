"""
Carathéodory functions M(z, D) on the hyperelliptic double.

Every M in the class is a rational function on the double,

    M(z, ±) = (p(z) ± q w(z)) / d(z),   d(z) = ∏_j (z − t_j),

with deg p ≤ g + 1. The divisor D fixes d and, through the sheet signs, which
of the two numerators vanishes at each t_j. The normalizations M(0) = 1 and
M(∞) = −1 on the physical sheet close the linear system for (p, q).

    build_m          divisor → SurfaceFunction
    fit_m            samples → SurfaceFunction, divisor, residual
    select_theta     member of the θ-family with a pole at a gap point
    rotate           θ-family member as a SurfaceFunction
    strip_and_rebuild  Carathéodory function of the once-stripped Schur function
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .arcset import TWO_PI, angle_gap
from .curve import (
    BOUNDARY_DELTA,
    Divisor,
    HyperellipticCurve,
    SurfacePoint,
    boundary_w,
    divisor_validate,
    evaluate_w,
)
from .errors import (
    NoConvergence,
    NoPoleAtRef,
    NotImaginaryAtRef,
    PositivityViolation,
    RefIsPole,
    SingularSystem,
)
from .moebius import (
    AnalyticFn,
    as_complex_array,
    cauchy_mean,
    cayley_caratheodory_to_schur,
    restore,
    theta_family,
)

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e12
CONDITION_RESIDUAL = 1e-10
POSITIVITY_TOL = 1e-8
GAP_TOL = 1e-8

FIT_MAX_ITER = 50
FIT_TOL = 1e-6

# Fitted poles this close (radians) to a gap endpoint are snapped onto it
SNAP_TOL = 1e-6

# Within this distance of a removable divisor point values use the conjugate form
REMOVABLE_RADIUS = 1e-3


@dataclass(frozen=True)
class SurfaceFunction:
    """
    (p(z) + sheet·q·w(z)) / d(z) on the double of C̄ ∖ E.

    p and d hold ascending coefficients; d is monic of degree g + 1.
    """

    curve: HyperellipticCurve
    p: np.ndarray
    q: complex
    d: np.ndarray
    divisor: Optional[Divisor] = None
    cond: float = float("nan")
    domain: str = field(default="slit", init=False)

    def _combine(self, z: np.ndarray, w: np.ndarray, sheet: int) -> np.ndarray:
        num = np.polynomial.polynomial.polyval(z, self.p) + sheet * self.q * w
        den = np.polynomial.polynomial.polyval(z, self.d)
        with np.errstate(divide="ignore", invalid="ignore"):
            return num / den

    def removable_points(self, sheet: int = 1) -> np.ndarray:
        """Zeros of d where the numerator on this sheet vanishes as well."""
        D = self.divisor
        if D is None:
            return np.zeros(0, dtype=complex)
        branch = D.branch or (False,) * len(D)
        return np.array([pt.z for pt, b in zip(D.points, branch) if not b and pt.sheet != sheet],
                        dtype=complex)

    def _conjugate(self, z: np.ndarray, w: np.ndarray, sheet: int, removable: np.ndarray) -> np.ndarray:
        """(p² − q² w²) / (d (p − sheet·q·w)) with the common roots divided out."""
        P = np.polynomial.polynomial
        num = P.polysub(P.polymul(self.p, self.p),
                        self.q ** 2 * P.polyfromroots(self.curve.branch_points))
        den = np.asarray(self.d, dtype=complex)
        for t in removable:
            num, _ = P.polydiv(num, [-t, 1.0])
            den, _ = P.polydiv(den, [-t, 1.0])
        return P.polyval(z, num) / (P.polyval(z, den) * (P.polyval(z, self.p) - sheet * self.q * w))

    def value(self, z, sheet: int = 1):
        shape = np.shape(z)
        values, scalar = as_complex_array(z)
        out = np.empty_like(values)
        finite = np.isfinite(values)
        w = evaluate_w(self.curve, values[finite])
        out[finite] = self._combine(values[finite], w, sheet)
        out[~finite] = self.at_infinity(sheet)

        removable = self.removable_points(sheet)
        if len(removable):
            distance = np.min(np.abs(values[finite][:, None] - removable[None, :]), axis=1)
            near = distance < REMOVABLE_RADIUS
            if np.any(near):
                idx = np.flatnonzero(finite)[near]
                out[idx] = self._conjugate(values[idx], w[near], sheet, removable)
        return restore(out, scalar, shape)

    def __call__(self, z):
        return self.value(z, 1)

    def at_infinity(self, sheet: int = 1) -> complex:
        return complex(self.p[-1] + sheet * self.q)

    def boundary_value(self, z, delta: float = BOUNDARY_DELTA):
        """Value on E from inside the unit disk, with the exact one-sided w."""
        shape = np.shape(z)
        values, scalar = as_complex_array(z)
        w = np.atleast_1d(boundary_w(self.curve, values, delta))
        return restore(self._combine(values, w, 1), scalar, shape)

    def residue(self, t: complex) -> complex:
        """Residue of the physical-sheet function at a simple zero t of d."""
        t = complex(t)
        num = np.polynomial.polynomial.polyval(t, self.p) + self.q * complex(evaluate_w(self.curve, t))
        dprime = np.polynomial.polynomial.polyval(t, np.polynomial.polynomial.polyder(self.d))
        return complex(num / dprime)

    @property
    def poles(self) -> np.ndarray:
        return np.roots(self.d[::-1])

    def to_dict(self) -> Dict[str, object]:
        poles = self.poles
        return {
            "p": [[c.real, c.imag] for c in np.asarray(self.p, dtype=complex)],
            "q": [complex(self.q).real, complex(self.q).imag],
            "d_roots": [[t.real, t.imag] for t in poles],
            "d_root_angles": [float(np.mod(np.angle(t), TWO_PI)) for t in poles],
            "condition_number": float(self.cond),
            "divisor": self.divisor.to_dict()["divisor"] if self.divisor is not None else None,
        }


# ============================================================================
# Construction
# ============================================================================

def _system(curve: HyperellipticCurve, D: Divisor) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Linear conditions on x = (p_0 .. p_{g+1}, q) and the monic d."""
    g = curve.genus
    n = g + 3
    t = D.locations
    d = np.polynomial.polynomial.polyfromroots(t)

    A = np.zeros((n, n), dtype=complex)
    b = np.zeros(n, dtype=complex)
    for j, point in enumerate(D.points):
        A[j, : g + 2] = point.z ** np.arange(g + 2)
        # w vanishes at branch points, so this row reduces to p(t_j) = 0 there
        w = 0.0 if D.branch and D.branch[j] else complex(evaluate_w(curve, point.z))
        A[j, g + 2] = -point.sheet * w

    # M(0) = 1
    A[g + 1, 0] = 1.0
    A[g + 1, g + 2] = complex(evaluate_w(curve, 0.0))
    b[g + 1] = np.polynomial.polynomial.polyval(0.0, d)
    # physical-sheet value at infinity = −1
    A[g + 2, g + 1] = 1.0
    A[g + 2, g + 2] = 1.0
    b[g + 2] = -1.0
    return A, b, d


def _solve_qr(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    Q, R, perm = scipy.linalg.qr(A, pivoting=True)
    y = scipy.linalg.solve_triangular(R, Q.conj().T @ b)
    x = np.empty_like(y)
    x[perm] = y
    return x


def build_m(curve: HyperellipticCurve, D: Divisor, solver: str = "qr",
            check_positivity: bool = True) -> SurfaceFunction:
    """
    Build M(z, D) with exactly D as its pole divisor.

    Args:
        curve: The double of C̄ ∖ E
        D: Divisor, validated against curve here
        solver: "qr" (column-pivoted QR) or "lu" (partial pivoting)
        check_positivity: Check Re M ≥ −1e-8 on the 20×20 polar grid

    Raises:
        SingularSystem: condition number above 1e12 or residual above 1e-10
        PositivityViolation: M is not Carathéodory on the grid
    """
    D = divisor_validate(curve, D)
    A, b, d = _system(curve, D)

    cond = float(np.linalg.cond(A))
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularSystem("divisor system is singular",
                             {"condition_number": cond, "divisor": D.label()})
    if solver == "qr":
        x = _solve_qr(A, b)
    elif solver == "lu":
        x = scipy.linalg.solve(A, b)
    else:
        raise ValueError(f"unknown solver '{solver}'")

    residual = float(np.max(np.abs(A @ x - b)))
    if residual > CONDITION_RESIDUAL:
        raise SingularSystem("divisor conditions not met to tolerance",
                             {"residual": residual, "condition_number": cond, "divisor": D.label()})

    g = curve.genus
    M = SurfaceFunction(curve, p=x[: g + 2], q=complex(x[g + 2]), d=d, divisor=D, cond=cond)
    logger.debug("build_m %s: cond %.3e, residual %.3e", D.label(), cond, residual)

    if check_positivity:
        min_re = float(np.min(polar_grid_values(M).real))
        if min_re < -POSITIVITY_TOL:
            raise PositivityViolation("Re M is negative inside the disk",
                                      {"min_re": min_re, "divisor": D.label()})
    return M


def polar_grid(n: int = 20, inside: bool = True) -> np.ndarray:
    """n × n polar grid in the open disk (or its image under z ↦ 1/z̄)."""
    radii = (np.arange(n) + 0.5) / n * 0.98
    angles = 2.0 * np.pi * (np.arange(n) + 0.25) / n
    grid = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    if inside:
        return grid
    return 1.0 / np.conj(grid[np.abs(grid) > 0.05])


def polar_grid_values(M: Callable, n: int = 20, inside: bool = True) -> np.ndarray:
    return np.asarray(M(polar_grid(n, inside)), dtype=complex)


def gap_points(curve: HyperellipticCurve, per_gap: int = 10,
               avoid: Optional[Divisor] = None, margin: float = 0.02) -> np.ndarray:
    """Interior gap points, excluding those within 1e-3 radians of divisor support."""
    pts: List[complex] = []
    for gap in curve.arcset.gaps:
        for phi in gap.interior_angles(per_gap, margin):
            if avoid is not None and any(angle_gap(phi, a) < 1e-3 for a in avoid.angles):
                continue
            pts.append(complex(np.exp(1j * phi)))
    return np.array(pts)


def structure_report(M: SurfaceFunction, n: int = 20) -> Dict[str, float]:
    """Normalization, positivity and gap-imaginarity defects of M."""
    gaps = gap_points(M.curve, 10, M.divisor)
    return {
        "m0_defect": float(abs(complex(M(0.0)) - 1.0)),
        "minf_defect": float(abs(M.at_infinity(1) + 1.0)),
        "min_re_inside": float(np.min(polar_grid_values(M, n, True).real)),
        "max_re_outside": float(np.max(polar_grid_values(M, n, False).real)),
        "gap_re_max": float(np.max(np.abs(np.asarray(M(gaps)).real))) if len(gaps) else 0.0,
    }


# ============================================================================
# Fitting
# ============================================================================

def sample_points(count: int, seed: int = 0) -> np.ndarray:
    """Physical-sheet sample points: half in 0.2 ≤ |z| ≤ 0.9, half in 1.2 ≤ |z| ≤ 3."""
    rng = np.random.default_rng(seed)
    inner = count // 2
    radii = np.concatenate([rng.uniform(0.2, 0.9, inner), rng.uniform(1.2, 3.0, count - inner)])
    return radii * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, count))


def fit_m(curve: HyperellipticCurve, z: np.ndarray, values: np.ndarray,
          max_iter: int = FIT_MAX_ITER, tol: float = FIT_TOL
          ) -> Tuple[SurfaceFunction, Divisor, float]:
    """
    Fit (p + q w)/d with monic d to samples of a physical-sheet function.

    The linearized residual value·d − p − q w is minimized by least squares
    and reweighted by 1/|d_prev| (Sanathanan–Koerner), starting from d with
    roots at the gap midpoints.

    Returns:
        (SurfaceFunction, recovered Divisor, max relative residual)

    Raises:
        NoConvergence: if the residual exceeds tol after max_iter iterations
    """
    g = curve.genus
    z = np.asarray(z, dtype=complex)
    values = np.asarray(values, dtype=complex)
    if len(z) < 4 * (g + 2):
        raise ValueError(f"fit_m needs at least {4 * (g + 2)} samples, got {len(z)}")

    w = np.asarray(evaluate_w(curve, z), dtype=complex)
    powers = z[:, None] ** np.arange(g + 2)[None, :]
    scale = 1.0 / np.maximum(1.0, np.abs(values))

    d = np.polynomial.polynomial.polyfromroots([gap.midpoint for gap in curve.arcset.gaps])
    x = None
    for iteration in range(max_iter):
        weight = scale / np.abs(np.polynomial.polynomial.polyval(z, d))
        # unknowns: d_0 .. d_g, p_0 .. p_{g+1}, q
        A = np.hstack([values[:, None] * powers[:, : g + 1], -powers, -w[:, None]])
        rhs = -values * z ** (g + 1)
        x_new, *_ = scipy.linalg.lstsq(A * weight[:, None], rhs * weight)
        d_new = np.concatenate([x_new[: g + 1], [1.0]])
        change = np.max(np.abs(d_new - d))
        d = d_new
        x = x_new
        if change < 1e-13:
            break
    logger.debug("fit_m stopped after %d iterations", iteration + 1)

    p = x[g + 1: 2 * g + 3]
    q = complex(x[2 * g + 3])
    fitted = SurfaceFunction(curve, p=p, q=q, d=d)
    approx = np.asarray(fitted(z), dtype=complex)
    residual = float(np.max(np.abs(approx - values) * scale))
    if not residual <= tol:
        raise NoConvergence("samples are not fitted by a function of the class",
                            {"residual": residual, "iterations": iteration + 1})

    divisor = _divisor_from_poles(curve, fitted)
    fitted = SurfaceFunction(curve, p=p, q=q, d=d, divisor=divisor)
    return fitted, divisor, residual


def _divisor_from_poles(curve: HyperellipticCurve, M: SurfaceFunction) -> Divisor:
    """Project the roots of d onto the circle and read the sheet off the numerators."""
    E = curve.arcset
    points = []
    for t in M.poles:
        t = t / abs(t)
        phi = float(np.mod(np.angle(t), TWO_PI))
        if E.gap_of(phi, closed=True) < 0:
            # Roundoff can leave a branch-point pole just inside E
            ends = [(angle_gap(phi, a), a) for gap in E.gaps for a in (gap.start_angle, gap.end_angle)]
            dist, nearest = min(ends)
            if dist <= SNAP_TOL:
                t = complex(np.exp(1j * nearest))
        num = np.polynomial.polynomial.polyval(t, M.p)
        qw = M.q * complex(evaluate_w(curve, t))
        sheet = 1 if abs(num - qw) < abs(num + qw) else -1
        points.append(SurfacePoint(complex(t), sheet))
    return divisor_validate(curve, Divisor(tuple(points)))


# ============================================================================
# θ-family
# ============================================================================

def select_theta(M: Callable, zref: complex) -> Tuple[float, AnalyticFn]:
    """
    The member of the θ-family of M with a pole at the gap point zref.

    With v = M(zref) = i y the pole condition sin(θ/2) y + cos(θ/2) = 0 has the
    unique solution θ = 2 atan2(1, −y) in [0, 2π).

    Raises:
        RefIsPole: if M itself has a pole at zref
        NotImaginaryAtRef: if |Re M(zref)| > 1e-6
        NoPoleAtRef: if |M_θ((1 ∓ 1e-6) zref)| ≤ 1e3
    """
    zref = complex(zref)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = complex(M(zref))
    if not np.isfinite(v) or abs(v) > 1e12:
        raise RefIsPole("M has a pole at the reference point", {"zref": zref})
    if abs(v.real) > 1e-6:
        raise NotImaginaryAtRef("M is not imaginary at the reference point",
                                {"zref": zref, "value": v})
    if abs(v.real) > GAP_TOL:
        logger.warning("Re M(zref) = %.3e exceeds the gap tolerance", v.real)

    theta = float(np.mod(2.0 * np.arctan2(1.0, -v.imag), 2.0 * np.pi))
    m_theta = theta_family(M, theta)
    near = np.array([(1.0 - 1e-6) * zref, (1.0 + 1e-6) * zref])
    smallest = float(np.min(np.abs(m_theta(near))))
    if not smallest > 1e3:
        raise NoPoleAtRef("θ-family member shows no pole at the reference point",
                          {"zref": zref, "theta": theta, "min_modulus": smallest})
    logger.debug("select_theta: M(zref) = %s, theta = %.12f", v, theta)
    return theta, m_theta


def rotate(M: SurfaceFunction, theta: float, samples: int = 64,
           seed: int = 7) -> SurfaceFunction:
    """M_θ as a SurfaceFunction, identified by fitting its samples."""
    z = sample_points(samples, seed)
    values = np.asarray(theta_family(M, theta)(z), dtype=complex)
    fitted, _, residual = fit_m(M.curve, z, values)
    logger.debug("rotate by %.6f: fit residual %.3e", theta, residual)
    return fitted


def strip_and_rebuild(M: Callable, tau: complex = 1.0) -> AnalyticFn:
    """
    Carathéodory function of the Schur function of M rotated by τ with its
    first parameter removed.

    With f the Schur function of M and a = τ f(0):

        M₁ = [(1 − a) z (M + 1) + τ (1 − ā)(M − 1)]
             / [(1 + a) z (M + 1) − τ (1 + ā)(M − 1)]

    The quotient is 0/0 at z = 0, where M₁ = 1; small |z| uses a Cauchy mean.
    """
    tau = complex(tau)
    a = tau * complex(cayley_caratheodory_to_schur(M)(0.0))

    def direct(z):
        m = np.asarray(M(z), dtype=complex)
        zp = z * (m + 1.0)
        mm = tau * (m - 1.0)
        return ((1.0 - a) * zp + (1.0 - np.conj(a)) * mm) / ((1.0 + a) * zp - (1.0 + np.conj(a)) * mm)

    def stripped(z):
        out = np.empty_like(z)
        small = np.abs(z) < 1e-4
        if np.any(~small):
            out[~small] = direct(z[~small])
        if np.any(small):
            out[small] = cauchy_mean(direct, z[small])
        return out

    return AnalyticFn(stripped, domain="slit", name="stripped")


def divisor_grid(curve: HyperellipticCurve, per_gap: int = 5,
                 sheets: Sequence[int] = (1, -1), margin: float = 0.05) -> List[Divisor]:
    """
    Product grid over D(E): per_gap interior points per gap, each with every
    sheet in sheets.
    """
    choices = []
    for gap in curve.arcset.gaps:
        choices.append([(phi, s) for phi in gap.interior_angles(per_gap, margin) for s in sheets])
    grid = []
    for combo in itertools.product(*choices):
        angles, signs = zip(*combo)
        grid.append(Divisor.from_angles(angles, signs))
    return grid
