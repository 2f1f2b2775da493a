"""Adapted Blaschke products and the kernel-side upper bound for a_n(C_φ).

B(s) = Π_j (s − s_j)/(s − (1/2 + θ) + s̄_j) has modulus one on the line
Re s = 1/4 + θ/2 and at most one on Re s ≥ θ when every zero has Re s_j ≥ θ.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from compop.carleson.pullback import pullback_profile
from compop.dirichlet.zeta import zeta_real
from compop.errors import LabError, UNBOUNDED_SYMBOL, VALIDATION_ERROR, precondition
from compop.services.settings import get_settings
from compop.symbols.symbol import BohrLift, LinearSymbol, bohr_lift, kappa

logger = logging.getLogger(__name__)

SUP_RELATIVE_CHANGE = 1e-3
_MIN_LEVEL = 6
_MAX_LEVEL = 20


def _check_zeros(zeros, theta: float) -> np.ndarray:
    if not theta > 0.5:
        raise precondition(f"theta must exceed 1/2, got {theta}")
    z = np.atleast_1d(np.asarray(zeros, dtype=complex))
    if np.any(z.real < theta):
        raise precondition("every zero needs Re s_j >= theta")
    return z


def blaschke_many(zeros, theta: float, s: np.ndarray) -> np.ndarray:
    """B over an array of points, summed in log-modulus and phase."""
    z = _check_zeros(zeros, theta)
    s = np.asarray(s, dtype=complex)
    if len(z) == 0:
        return np.ones(s.shape, dtype=complex)
    num = s[..., None] - z
    den = s[..., None] - (0.5 + theta) + np.conj(z)
    with np.errstate(divide="ignore"):
        log_mod = np.sum(np.log(np.abs(num)) - np.log(np.abs(den)), axis=-1)
    phase = np.sum(np.angle(num) - np.angle(den), axis=-1)
    out = np.exp(log_mod) * np.exp(1j * phase)
    return np.where(np.any(num == 0, axis=-1), 0j, out)


def blaschke_eval(zeros, theta: float, s: complex) -> complex:
    return complex(blaschke_many(zeros, theta, np.asarray(s, dtype=complex)))


# ---------------------------------------------------------------------------
# Rates and parameters
# ---------------------------------------------------------------------------


def _range_disc(lift: BohrLift) -> tuple[complex, float]:
    return lift.c1, lift.radius


def compact_range_rate(lift: BohrLift, s0: complex, theta: float) -> float:
    """sup over the closed range disc of |(s − s₀)/(s − (1/2 + θ) + s̄₀)|.

    The map is analytic on the disc, so the sup is taken on the boundary
    circle: a dense sample, then a bounded refinement around the best one.
    """
    center, radius = _range_disc(lift)
    s0 = complex(s0)
    pole = 0.5 + theta - s0.conjugate()
    if abs(pole - center) <= radius:
        raise precondition("range disc contains the pole of the rate map")

    def modulus(alpha: float) -> float:
        s = center + radius * complex(math.cos(alpha), math.sin(alpha))
        return abs((s - s0) / (s - pole))

    if radius == 0.0:
        return modulus(0.0)
    grid = np.linspace(0.0, 2 * math.pi, 4096, endpoint=False)
    values = np.array([modulus(a) for a in grid])
    k = int(np.argmax(values))
    step = grid[1] - grid[0]
    refined = minimize_scalar(
        lambda a: -modulus(a),
        bounds=(grid[k] - step, grid[k] + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return max(float(values[k]), -float(refined.fun))


def upper_bound_parameters(n: int, rho: float) -> tuple[float, list[complex]]:
    """θ = 1/2 + 2ρ²n^{-2}(log n)² and n − 1 zeros at 1/2 + ρn^{-1}log n."""
    if n < 2:
        raise precondition(f"n must be >= 2, got {n}")
    if not rho > 0:
        raise precondition(f"rho must be positive, got {rho}")
    log_n = math.log(n)
    theta = 0.5 + 2 * rho**2 * log_n**2 / n**2
    zero = 0.5 + rho * log_n / n
    if zero < theta:
        raise precondition(f"zero {zero:.6g} falls below theta {theta:.6g}; decrease rho or raise n")
    return theta, [complex(zero)] * (n - 1)


# ---------------------------------------------------------------------------
# Upper bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpperBoundEstimate:
    """(sup_Ω |B|²·ζ(1/2 + θ) + C_emb·box ratio)^{1/2}; sampled, not certified."""

    value: float
    sup_b_sq: float
    zeta_factor: float
    mu_term: float
    boundary_points: int
    estimate: bool = True


def _omega_boundary(center: complex, radius: float, theta: float, level: int) -> np.ndarray:
    """Boundary of {|s − center| ≤ radius} ∩ {Re s ≥ θ} at 2^level points per piece."""
    count = 2**level
    if radius == 0.0:
        return np.array([center]) if center.real >= theta else np.empty(0, dtype=complex)
    alpha = np.linspace(0.0, 2 * math.pi, count, endpoint=False)
    circle = center + radius * np.exp(1j * alpha)
    arc = circle[circle.real >= theta]
    offset = theta - center.real
    if abs(offset) < radius:
        half = math.sqrt(radius**2 - offset**2)
        chord = theta + 1j * (center.imag + np.linspace(-half, half, count))
        return np.concatenate([arc, chord])
    return arc


def _sup_b_sq(zeros: np.ndarray, theta: float, center: complex, radius: float) -> tuple[float, int]:
    previous = None
    points = 0
    for level in range(_MIN_LEVEL, _MAX_LEVEL + 1):
        boundary = _omega_boundary(center, radius, theta, level)
        points = len(boundary)
        if points == 0:
            return 0.0, 0
        value = float(np.max(np.abs(blaschke_many(zeros, theta, boundary)) ** 2))
        if previous is not None and abs(value - previous) <= SUP_RELATIVE_CHANGE * max(value, 1e-300):
            return value, points
        if radius == 0.0:
            return value, points
        previous = value
    logger.warning("sup |B|^2 still moving at 2^%d boundary points", _MAX_LEVEL)
    return value, points


def blaschke_upper_bound(
    sym: LinearSymbol,
    zeros,
    theta: float,
    epsilons: list[float] | None = None,
    samples: int | None = None,
    seed: int | None = None,
    embedding_constant: float | None = None,
) -> UpperBoundEstimate:
    """Sampled upper bound for a_n(C_φ) with n − 1 = len(zeros).

    Ω is the closed range disc of the Bohr lift cut to Re s ≥ θ; the μ term
    is the largest box ratio of the pulled-back torus measure outside Ω.
    """
    if kappa(sym) < 0.5:
        raise LabError(UNBOUNDED_SYMBOL, 422, f"kappa = {kappa(sym):.6g} < 1/2")
    z = _check_zeros(zeros, theta)
    settings = get_settings()
    if embedding_constant is None:
        embedding_constant = settings.embedding_constant
    if not embedding_constant > 0:
        raise LabError(VALIDATION_ERROR, 422, "embedding constant must be positive")

    lift = bohr_lift(sym)
    center, radius = _range_disc(lift)
    sup_sq, points = _sup_b_sq(z, theta, center, radius)
    zeta_factor = zeta_real(0.5 + theta)

    mu_term = 0.0
    if sym.d > 0 and center.real - radius < theta:
        if epsilons is None:
            epsilons = [(theta - 0.5) * 2.0**k for k in range(3, -4, -1)]
        profile = pullback_profile(lift, epsilons, samples=samples, seed=seed, omega_theta=theta)
        mu_term = embedding_constant * max(profile.ratios)

    value = math.sqrt(sup_sq * zeta_factor + mu_term)
    logger.info(
        "upper bound estimate %.6g (sup|B|^2 %.3g, zeta %.3g, mu %.3g)",
        value,
        sup_sq,
        zeta_factor,
        mu_term,
    )
    return UpperBoundEstimate(
        value=value,
        sup_b_sq=sup_sq,
        zeta_factor=zeta_factor,
        mu_term=mu_term,
        boundary_points=points,
    )
