"""
Herglotz inversion: the probability measure σ_D of M(z, D).

    M(z) = ∫ (t + z)/(t − z) dσ(t)

The absolutely continuous part has density Re M(e^{iφ})/(2π) on E (boundary
value from inside the disk). Each physical-sheet pole t in an open gap is an
atom of mass lim_{z→t} (t − z) M(z)/(2t). Poles on the other sheet and at
branch points carry no mass.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .curve import BOUNDARY_DELTA, Divisor, divisor_validate
from .errors import InputError, MassDeficit, NegativeDensity, NegativeMass
from .mfunc import SurfaceFunction
from .quadrature import arc_rule

logger = logging.getLogger(__name__)

DENSITY_CLAMP = 1e-8
MASS_CLAMP = 1e-10
UNIT_MASS_TOL = 1e-7
MASS_DEFICIT_TOL = 1e-5

# Richardson extrapolation along the radius: h_k = RICHARDSON_H0 · 2^(−k)
RICHARDSON_H0 = 1e-3
RICHARDSON_STEPS = 6


@dataclass(frozen=True)
class QuadratureMeasure:
    """Weighted nodes on E plus atoms in the gaps."""

    nodes: np.ndarray
    weights: np.ndarray
    atoms: Tuple[Tuple[complex, float], ...] = ()
    level: Optional[int] = None
    dropped: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def angles(self) -> np.ndarray:
        return np.mod(np.angle(self.nodes), 2.0 * np.pi)

    @property
    def atom_locations(self) -> np.ndarray:
        return np.array([loc for loc, _ in self.atoms], dtype=complex)

    @property
    def atom_weights(self) -> np.ndarray:
        return np.array([mass for _, mass in self.atoms], dtype=float)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights) + np.sum(self.atom_weights))

    @property
    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """All points and weights, quadrature nodes first."""
        return (np.concatenate([self.nodes, self.atom_locations]),
                np.concatenate([self.weights, self.atom_weights]))

    def table(self) -> np.ndarray:
        return np.column_stack([self.angles, self.weights])

    def atom_table(self) -> np.ndarray:
        if not self.atoms:
            return np.zeros((0, 2))
        return np.column_stack([np.mod(np.angle(self.atom_locations), 2.0 * np.pi), self.atom_weights])


def density(M: SurfaceFunction, phi, delta: float = BOUNDARY_DELTA):
    """
    Density Re M(e^{iφ}) / (2π) of the absolutely continuous part.

    Raises:
        InputError: if some e^{iφ} is not on E
        NegativeDensity: if the density is below −1e-8
    """
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    E = M.curve.arcset
    if not all(E.contains_angle(p) for p in phi_arr):
        raise InputError("density is defined on E only", {"angles": phi_arr[:5].tolist()})

    values = np.real(np.atleast_1d(M.boundary_value(np.exp(1j * phi_arr), delta))) / (2.0 * np.pi)
    low = float(np.min(values))
    if low < -DENSITY_CLAMP:
        raise NegativeDensity("negative density on E", {"min_density": low})
    if low < 0.0:
        logger.debug("clamped density values down to %.3e", low)
        values = np.maximum(values, 0.0)
    return float(values[0]) if np.ndim(phi) == 0 else values


def exact_atom_mass(M: SurfaceFunction, t: complex) -> float:
    """−Res_{z=t} M / (2t) from the rational representation."""
    t = complex(t)
    return float((-M.residue(t) / (2.0 * t)).real)


def _richardson(values: np.ndarray) -> float:
    """Extrapolate g(h_k) with h_k halving to h = 0 (Neville table)."""
    table = np.array(values, dtype=complex)
    for level in range(1, len(table)):
        factor = 2.0 ** level
        table = (factor * table[1:] - table[:-1]) / (factor - 1.0)
    return complex(table[0])


def atom_masses(M: SurfaceFunction, D: Optional[Divisor] = None) -> List[Tuple[complex, float]]:
    """
    Point masses at physical-sheet divisor points inside open gaps.

    mass = lim_{h→0} h M((1 − h) t) / 2, extrapolated by Richardson from
    h = 1e-3 · 2^(−k), k = 0 .. 5.

    Raises:
        NegativeMass: if an extrapolated mass is below −1e-10
    """
    D = M.divisor if D is None else divisor_validate(M.curve, D)
    if D is None:
        raise InputError("atom_masses needs the divisor of M")
    atoms = []
    for j, point in enumerate(D.points):
        if D.branch and D.branch[j]:
            logger.info("divisor point of gap %d is a branch point and carries no atom", j)
            continue
        if point.sheet != 1:
            continue
        t = point.z
        h = RICHARDSON_H0 * 2.0 ** -np.arange(RICHARDSON_STEPS)
        samples = 0.5 * h * np.asarray(M((1.0 - h) * t), dtype=complex)
        mass = _richardson(samples)
        if abs(mass.imag) > 1e-8:
            logger.warning("atom mass at angle %.6f has imaginary part %.3e", point.angle, mass.imag)
        value = mass.real
        if value < -MASS_CLAMP:
            raise NegativeMass("negative atom mass", {"angle": point.angle, "mass": value})
        atoms.append((t, max(value, 0.0)))
    return atoms


def quadrature(M: SurfaceFunction, D: Optional[Divisor] = None, level: int = 8,
               check: bool = True) -> QuadratureMeasure:
    """
    Tanh-sinh nodes of the density on each arc plus the atoms.

    No renormalization: total_mass is reported as computed.

    Raises:
        MassDeficit: if check and |total − 1| exceeds 1e-7 (level ≥ 8) or
            1e-5 (lower levels)
    """
    D = M.divisor if D is None else divisor_validate(M.curve, D)
    nodes = []
    weights = []
    for arc in M.curve.arcset.arcs:
        angles, w = arc_rule(arc, level)
        nodes.append(np.exp(1j * angles))
        weights.append(w * density(M, angles))
    atoms = atom_masses(M, D)
    dropped = tuple(f"gap {j}: branch point" for j, b in enumerate(D.branch or ()) if b)

    mu = QuadratureMeasure(np.concatenate(nodes), np.concatenate(weights), tuple(atoms),
                           level, dropped)
    deviation = abs(mu.total_mass - 1.0)
    logger.info("quadrature level %d: %d nodes, %d atoms, total mass %.12f",
                level, len(mu.nodes), len(atoms), mu.total_mass)
    tol = UNIT_MASS_TOL if level >= 8 else MASS_DEFICIT_TOL
    if check and deviation > tol:
        raise MassDeficit("measure does not have unit mass",
                          {"total_mass": mu.total_mass, "level": level, "tolerance": tol})
    return mu


def moments(mu: QuadratureMeasure, k_max: int) -> np.ndarray:
    """c_k = ∫ conj(t)^k dσ for k = 0 .. k_max."""
    points, w = mu.support
    k = np.arange(k_max + 1)
    return (w[None, :] * np.conj(points)[None, :] ** k[:, None]).sum(axis=1)


def taylor_coefficients(M, k_max: int, radius: float = 0.5, n: int = 256) -> np.ndarray:
    """
    c_0 .. c_{k_max} with M(z) = c_0 + 2 Σ_{k≥1} c_k z^k, by FFT on |z| = radius.
    """
    z = radius * np.exp(2j * np.pi * np.arange(n) / n)
    a = np.fft.fft(np.asarray(M(z), dtype=complex)) / n
    k = np.arange(k_max + 1)
    c = a[: k_max + 1] / radius ** k
    c[1:] *= 0.5
    return c
