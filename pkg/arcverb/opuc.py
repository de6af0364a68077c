"""
Orthogonal polynomials on the unit circle for a discrete measure.

Inner product (used everywhere):

    ⟨f, g⟩ = Σ_k w_k f(x_k) conj(g(x_k))

Szegő recursion for the monic polynomials and their reversals:

    Φ_{n+1}(z)  = z Φ_n(z) − conj(α_n) Φ*_n(z)
    Φ*_{n+1}(z) = Φ*_n(z) − α_n z Φ_n(z)

α_n is fixed by orthogonality of Φ_{n+1} to Φ*_n, so

    conj(α_n) = ⟨z Φ_n, Φ*_n⟩ / ‖Φ*_n‖².

Values at the support points drive the recursion; monomial coefficients are
carried alongside for export and for the check α_n = −conj(Φ_{n+1}(0)).
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import InputError, MeasureTooThin, NormCollapse, RecursionDefect
from .measure import QuadratureMeasure
from .schur import DEFAULT_GRID, DEFAULT_RADIUS, MAX_PARAMS, SchurParamSeq, schur_sequence

logger = logging.getLogger(__name__)

# ‖Φ_{n+1}‖² / ‖Φ_n‖² = 1 − |α_n|² at or below this means the support is exhausted
COLLAPSE_RATIO = 1e-12
NORM_IDENTITY_TOL = 1e-8
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class MonicOPUC:
    """Monic Φ_0 .. Φ_N (ascending coefficients), their norms and α_0 .. α_{N−1}."""

    degree: int
    coefficients: Tuple[np.ndarray, ...]
    norms: np.ndarray
    verblunsky: SchurParamSeq
    norm_defects: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def evaluate(self, n: int, z) -> np.ndarray:
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.coefficients[n])

    def gram(self, mu: QuadratureMeasure) -> np.ndarray:
        """Gram matrix ⟨Φ_m, Φ_n⟩ under mu."""
        points, w = mu.support
        values = np.array([self.evaluate(n, points) for n in range(self.degree + 1)])
        return (values * w[None, :]) @ values.conj().T

    def orthogonality_defect(self, mu: QuadratureMeasure) -> float:
        """max_{m≠n} |⟨Φ_m, Φ_n⟩| / (‖Φ_m‖ ‖Φ_n‖)."""
        G = self.gram(mu)
        scale = np.sqrt(np.abs(np.diag(G)))
        R = np.abs(G) / np.outer(scale, scale)
        np.fill_diagonal(R, 0.0)
        return float(np.max(R))


def verblunsky_from_measure(mu: QuadratureMeasure, N: int) -> MonicOPUC:
    """
    Run N steps of the Szegő recursion against mu.

    Raises:
        MeasureTooThin: if mu has quadrature nodes but fewer than 2N + 1
        NormCollapse: if ‖Φ_n‖² drops below 1e-12 ‖Φ_{n−1}‖² before step n
        RecursionDefect: if the norm identity ‖Φ_{n+1}‖² = (1 − |α_n|²) ‖Φ_n‖²
            or α_n = −conj(Φ_{n+1}(0)) fails by more than 1e-8
    """
    if not 1 <= N <= MAX_PARAMS:
        raise InputError(f"N must lie in [1, {MAX_PARAMS}]", {"N": N})
    n_nodes = len(mu.nodes)
    if 0 < n_nodes < 2 * N + 1:
        raise MeasureTooThin("too few quadrature nodes for the requested degree",
                             {"nodes": n_nodes, "required": 2 * N + 1})
    if abs(mu.total_mass - 1.0) > 1e-6:
        raise InputError("measure is not normalized", {"total_mass": mu.total_mass})

    x, w = mu.support
    phi = np.ones_like(x)
    phi_star = np.ones_like(x)
    c = np.ones(1, dtype=complex)
    c_star = np.ones(1, dtype=complex)

    coefficients: List[np.ndarray] = [c]
    norms = [float(np.sum(w))]
    alphas = []
    defects = []
    for n in range(N):
        norm_star = float(np.sum(w * np.abs(phi_star) ** 2))
        ratio = norms[n] / norms[n - 1] if n else 1.0
        if not norm_star > 0.0 or not norms[n] > 0.0 or ratio <= COLLAPSE_RATIO:
            raise NormCollapse("polynomial norm collapsed; the measure has too few support points",
                               {"n": n, "norm": norms[n], "ratio": ratio})
        xphi = x * phi
        alpha_bar = np.sum(w * xphi * np.conj(phi_star)) / norm_star
        alpha = np.conj(alpha_bar)

        phi, phi_star = xphi - alpha_bar * phi_star, phi_star - alpha * xphi
        shifted = np.concatenate([[0.0], c])
        padded = np.concatenate([c_star, [0.0]])
        c, c_star = shifted - alpha_bar * padded, padded - alpha * shifted

        check = abs(alpha + np.conj(c[0]))
        if not check <= CONSISTENCY_TOL:
            raise RecursionDefect(f"α_{n} differs from −conj(Φ_{n + 1}(0))",
                                  {"n": n, "defect": float(check)})

        norm_next = float(np.sum(w * np.abs(phi) ** 2))
        expected = (1.0 - abs(alpha) ** 2) * norms[n]
        defect = abs(norm_next - expected) / norms[n]
        if not defect <= NORM_IDENTITY_TOL:
            raise RecursionDefect("norm identity ‖Φ_{n+1}‖² = (1 − |α_n|²) ‖Φ_n‖² fails",
                                  {"n": n, "defect": defect})

        alphas.append(complex(alpha))
        norms.append(norm_next)
        defects.append(defect)
        coefficients.append(c.copy())

    logger.info("Szegő recursion: %d coefficients, |α_0| = %.10f", N, abs(alphas[0]))
    return MonicOPUC(
        degree=N,
        coefficients=tuple(coefficients),
        norms=np.array(norms),
        verblunsky=SchurParamSeq(np.array(alphas), terminated=bool(abs(alphas[-1]) >= 1.0 - 1e-12)),
        norm_defects=np.array(defects),
    )


def dual_path(M, mu: QuadratureMeasure, N: int, radius: float = DEFAULT_RADIUS,
              n_grid: int = DEFAULT_GRID) -> Tuple[SchurParamSeq, SchurParamSeq, float]:
    """Verblunsky coefficients from mu and Schur parameters from M, with their max deviation."""
    polys = verblunsky_from_measure(mu, N)
    schur = schur_sequence(M, N, radius, n_grid)
    n = min(len(polys.verblunsky), len(schur))
    deviation = float(np.max(np.abs(polys.verblunsky.params[:n] - schur.params[:n])))
    logger.info("dual-path deviation over %d parameters: %.3e", n, deviation)
    return polys.verblunsky, schur, deviation


def cross_validate(M, mu: QuadratureMeasure, N: int, radius: float = DEFAULT_RADIUS) -> float:
    """max_n |α_n(OPUC) − a_n(Schur algorithm)|."""
    return dual_path(M, mu, N, radius)[2]


def recurrence_defect(alpha, max_shift: int = None) -> Tuple[int, float]:
    """
    Best return time of a parameter sequence.

    Returns:
        (k, defect) minimizing max_{n+k<N} |α_{n+k} − α_n| over 1 ≤ k ≤ max_shift
        (default N // 2)
    """
    a = np.asarray(getattr(alpha, "params", alpha), dtype=complex)
    N = len(a)
    if max_shift is None:
        max_shift = N // 2
    max_shift = min(max_shift, N - 1)
    if max_shift < 1:
        raise InputError("sequence too short for a recurrence check", {"length": N})
    defects = [float(np.max(np.abs(a[k:] - a[:-k]))) for k in range(1, max_shift + 1)]
    best = int(np.argmin(defects))
    return best + 1, defects[best]


def lebesgue_quadrature(n_nodes: int) -> QuadratureMeasure:
    """Equal weights at the n-th roots of unity; exact for |k| < n."""
    nodes = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    return QuadratureMeasure(nodes, np.full(n_nodes, 1.0 / n_nodes))
