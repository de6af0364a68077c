"""
The Schur algorithm on sampled functions.

A Schur function is carried by its samples on the uniform grid of the circle
|z| = radius together with its leading Taylor coefficients. Samples given
without coefficients are read through the FFT, c_k = X_k / radius^k, for
k < K where radius^K ≈ 1e-17; past that c_k radius^k is roundoff. c_0 is the
grid mean of the samples.

One strip replaces s by

    s_next(z) = (s(z) − a) / (z (1 − conj(a) s(z))),   a = s(0) = c_0,

and compose runs the inverse step s ↦ (a + z s) / (1 + conj(a) z s) from the
last parameter to the first. Both are lower-triangular Toeplitz solves on the
coefficients, and the samples are recomputed from the coefficients by an
inverse FFT.

An error η in the samples puts η radius^(−k) into c_k, and a_n depends on c_n
with gain 1/∏(1 − |a_k|²), so the error of a_n grows like
(radius (1 − |a|²))^(−n). schur_sequence repeats the extraction at the larger
radius sqrt(radius), keeps the difference as a per-parameter error estimate
and raises PrecisionLoss when it exceeds the tolerance.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .errors import ExtremalFunction, InputError, ParamOutOfDisk, PrecisionLoss
from .moebius import cayley_caratheodory_to_schur

logger = logging.getLogger(__name__)

DEFAULT_RADIUS = 0.5
DEFAULT_GRID = 1024
EXTREMAL_TOL = 1e-12
SCHUR_CLASS_TOL = 1e-9
PRECISION_TOL = 1e-5
MAX_PARAMS = 40

# c_k radius^k below this carries no information
COEFFICIENT_FLOOR = 1e-17


@dataclass(frozen=True)
class SchurParamSeq:
    """
    Schur (Verblunsky) parameters a_0 .. a_{N−1}.

    A sequence cut short by an extremal step has terminated=True; its last
    stored entry is the parameter of modulus ~1 that ended it. error_estimate
    holds |a_n(radius) − a_n(sqrt(radius))| when the sequence came from
    schur_sequence.
    """

    params: np.ndarray
    terminated: bool = False
    overshoot: Tuple[float, ...] = field(default_factory=tuple)
    error_estimate: Tuple[float, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.params)

    def __getitem__(self, n):
        return self.params[n]

    def rotated(self, tau: complex) -> "SchurParamSeq":
        return SchurParamSeq(np.asarray(self.params) * tau, self.terminated,
                             self.overshoot, self.error_estimate)

    def table(self) -> np.ndarray:
        """Rows (n, re, im, abs, arg) for CSV export."""
        p = np.asarray(self.params, dtype=complex)
        n = np.arange(len(p))
        return np.column_stack([n, p.real, p.imag, np.abs(p), np.angle(p)])


@dataclass(frozen=True)
class SampledSchurFn:
    """
    Samples of a Schur function on the uniform grid of |z| = radius.

    coefficients, when present, are the Taylor coefficients the samples were
    computed from.
    """

    radius: float
    samples: np.ndarray
    coefficients: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.samples)
        if n < 256 or n & (n - 1):
            raise InputError("grid size must be a power of two ≥ 256", {"grid": n})
        if not 0.0 < self.radius < 1.0:
            raise InputError("radius must lie in (0, 1)", {"radius": self.radius})
        if np.max(np.abs(self.samples)) > 1.0 + SCHUR_CLASS_TOL:
            raise InputError("samples leave the closed unit disk",
                             {"max_modulus": float(np.max(np.abs(self.samples)))})

    @property
    def grid(self) -> np.ndarray:
        return grid_points(self.radius, len(self.samples))

    @property
    def value_at_zero(self) -> complex:
        return complex(np.mean(self.samples))

    @property
    def taylor(self) -> np.ndarray:
        """Leading Taylor coefficients c_0 .. c_{K−1}."""
        if self.coefficients is not None:
            return self.coefficients
        n = len(self.samples)
        K = series_length(self.radius, n)
        X = np.fft.fft(self.samples)[:K] / n
        return X / self.radius ** np.arange(K)

    @classmethod
    def from_function(cls, func: Callable, radius: float = DEFAULT_RADIUS,
                      n_grid: int = DEFAULT_GRID) -> "SampledSchurFn":
        z = grid_points(radius, n_grid)
        return cls(radius, np.asarray(func(z), dtype=complex))

    @classmethod
    def from_coefficients(cls, coefficients, radius: float = DEFAULT_RADIUS,
                          n_grid: int = DEFAULT_GRID) -> "SampledSchurFn":
        c = np.asarray(coefficients, dtype=complex)[:n_grid // 2]
        return cls(radius, evaluate_series(c, radius, n_grid), c)

    @classmethod
    def constant(cls, value: complex, radius: float = DEFAULT_RADIUS,
                 n_grid: int = DEFAULT_GRID) -> "SampledSchurFn":
        return cls.from_coefficients([complex(value)], radius, n_grid)


def grid_points(radius: float, n_grid: int) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(n_grid) / n_grid)


def series_length(radius: float, n_grid: int) -> int:
    """Number of Taylor coefficients the grid resolves above roundoff."""
    k = math.ceil(math.log(COEFFICIENT_FLOOR) / math.log(radius))
    return min(n_grid // 2, max(k, MAX_PARAMS + 1))


def evaluate_series(coefficients: np.ndarray, radius: float, n_grid: int) -> np.ndarray:
    """Σ c_k z^k on the grid of |z| = radius."""
    X = np.zeros(n_grid, dtype=complex)
    X[:len(coefficients)] = coefficients * radius ** np.arange(len(coefficients))
    return n_grid * np.fft.ifft(X)


def _series_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """First len(num) Taylor coefficients of num/den; den[0] must not vanish."""
    n = len(num)
    T = scipy.linalg.toeplitz(den[:n], np.zeros(n, dtype=complex))
    return scipy.linalg.solve_triangular(T, num, lower=True)


def schur_strip(s: SampledSchurFn) -> Tuple[complex, SampledSchurFn]:
    """
    Remove the first Schur parameter.

    Returns:
        (a, s_next) with a = s(0), the grid mean

    Raises:
        ExtremalFunction: if |s(0)| ≥ 1 − 1e-12
        PrecisionLoss: if s_next leaves the Schur class by more than 1e-9 or
            no coefficients are left
    """
    c = s.taylor
    a = complex(c[0])
    if abs(a) >= 1.0 - EXTREMAL_TOL:
        raise ExtremalFunction("|s(0)| reached 1, the sequence terminates", {"a": a})
    if len(c) < 2:
        raise PrecisionLoss("no Taylor coefficients left to strip", {"radius": s.radius})

    den = -np.conj(a) * c[:-1]
    den[0] += 1.0
    nxt = _series_divide(c[1:], den)
    samples = evaluate_series(nxt, s.radius, len(s.samples))

    overshoot = float(np.max(np.abs(samples))) - 1.0
    if not overshoot <= SCHUR_CLASS_TOL:
        raise PrecisionLoss("stripped function left the Schur class",
                            {"a": a, "overshoot": overshoot, "radius": s.radius})
    return a, SampledSchurFn(s.radius, samples, nxt)


def schur_compose(params: Sequence[complex], tail: Optional[SampledSchurFn] = None,
                  radius: float = DEFAULT_RADIUS, n_grid: int = DEFAULT_GRID) -> SampledSchurFn:
    """
    Build a Schur function from its leading parameters and a tail.

    Args:
        params: a_0 .. a_{n−1}, all of modulus < 1
        tail: Sampled tail function, or None for the zero function
        radius, n_grid: Grid used when tail is None

    Raises:
        ParamOutOfDisk: if some |a_n| ≥ 1
    """
    params = np.asarray(params, dtype=complex)
    if np.any(np.abs(params) >= 1.0):
        raise ParamOutOfDisk("Schur parameters must lie in the open disk",
                             {"index": int(np.argmax(np.abs(params) >= 1.0))})
    if tail is None:
        tail = SampledSchurFn.constant(0.0, radius, n_grid)

    n = len(tail.samples)
    c = np.zeros(series_length(tail.radius, n), dtype=complex)
    t = tail.taylor[:len(c)]
    c[:len(t)] = t
    for a in params[::-1]:
        zs = np.concatenate([[0.0], c[:-1]])
        num = zs.copy()
        num[0] += a
        den = np.conj(a) * zs
        den[0] += 1.0
        c = _series_divide(num, den)
    return SampledSchurFn.from_coefficients(c, tail.radius, n)


def strip_sequence(s: SampledSchurFn, count: int) -> SchurParamSeq:
    """Run count strips; an extremal step ends the sequence with a marker."""
    params: List[complex] = []
    overshoot: List[float] = []
    terminated = False
    for n in range(count):
        try:
            a, s = schur_strip(s)
        except ExtremalFunction as e:
            logger.warning("Schur sequence terminated at n = %d (|a| = %.12f)", n, abs(e.details["a"]))
            params.append(complex(e.details["a"]))
            terminated = True
            break
        except PrecisionLoss as e:
            e.details["n"] = n
            raise
        params.append(a)
        overshoot.append(max(0.0, float(np.max(np.abs(s.samples)) - 1.0)))
    return SchurParamSeq(np.array(params, dtype=complex), terminated, tuple(overshoot))


def reference_grid(radius: float, n_grid: int) -> int:
    """Smallest power-of-two grid ≥ n_grid on which radius^(n/2) is below roundoff."""
    n = n_grid
    while radius ** (n // 2) > COEFFICIENT_FLOOR:
        n *= 2
    return n


def schur_sequence(M: Callable, N: int, radius: float = DEFAULT_RADIUS,
                   n_grid: int = DEFAULT_GRID, tol: float = PRECISION_TOL) -> SchurParamSeq:
    """
    Schur parameters of the Schur function of a Carathéodory function M.

    Args:
        M: Normalized Carathéodory function, M(0) = 1
        N: Number of parameters (1 ≤ N ≤ 40)
        radius: Sampling radius in (0.1, 0.9)
        tol: Largest accepted error estimate

    Returns:
        SchurParamSeq with overshoot and error-estimate diagnostics

    Raises:
        PrecisionLoss: if the estimated error of some a_n exceeds tol
    """
    if not 1 <= N <= MAX_PARAMS:
        raise InputError(f"N must lie in [1, {MAX_PARAMS}]", {"N": N})
    if not 0.1 < radius < 0.9:
        raise InputError("radius must lie in (0.1, 0.9)", {"radius": radius})

    f = cayley_caratheodory_to_schur(M)
    seq = strip_sequence(SampledSchurFn.from_function(f, radius, n_grid), N)

    ref_radius = math.sqrt(radius)
    ref = strip_sequence(
        SampledSchurFn.from_function(f, ref_radius, reference_grid(ref_radius, n_grid)), len(seq))
    n = min(len(seq), len(ref))
    estimate = np.abs(seq.params[:n] - ref.params[:n])
    inaccurate = ~(estimate <= tol)
    if np.any(inaccurate):
        first = int(np.argmax(inaccurate))
        raise PrecisionLoss(
            f"Schur parameters lose accuracy from n = {first}; lower N or raise the radius",
            {"n": first, "estimate": float(estimate[first]), "tolerance": tol,
             "radius": radius, "N": N})

    logger.info("Schur path: %d parameters, |a_0| = %.10f, error estimate %.3e",
                len(seq), abs(seq.params[0]), float(np.max(estimate)) if n else 0.0)
    return SchurParamSeq(seq.params, seq.terminated, seq.overshoot,
                         tuple(float(e) for e in estimate))
