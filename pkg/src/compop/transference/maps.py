"""Disc self-maps and their transfer φ = T∘ω∘I to Dirichlet symbols.

T(z) = 1/2 + (1 − z)/(1 + z) maps 𝔻 onto ℂ_{1/2} and I(s) = 2^{-s}, so
φ(s) = 1/2 + h(2^{-s}) with h = (1 − ω)/(1 + ω).
"""

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from compop.dirichlet.poly import as_point, poly
from compop.errors import LabError, NOT_CONVERGED, VALIDATION_ERROR, precondition
from compop.symbols.symbol import Symbol

logger = logging.getLogger(__name__)

MIN_DISTANCE_TO_ONE = 1e-3
INSTABILITY_FACTOR = 10.0
_RADIAL_STEPS = 16


def mobius_t(z: complex) -> complex:
    z = as_point(z)
    if z == -1:
        raise LabError(VALIDATION_ERROR, 422, "T has a pole at z = -1")
    return 0.5 + (1 - z) / (1 + z)


def map_i(s: complex) -> complex:
    return cmath.exp(-as_point(s) * math.log(2.0))


@dataclass(frozen=True)
class DiscSelfMap:
    """ω(z) = Σ_k a_k z^k, checked on a radial grid of the disc |z| ≤ grid_radius.

    The check samples; it is not a proof near the boundary circle.
    """

    taylor: tuple[complex, ...]
    grid_radius: float = 0.99
    grid_points: int = 512
    certified_bound: float = field(init=False)
    min_distance_to_one: float = field(init=False)

    def __post_init__(self) -> None:
        coeffs = tuple(as_point(a) for a in self.taylor)
        if not coeffs:
            raise LabError(VALIDATION_ERROR, 422, "taylor series needs at least one coefficient")
        if not 0 < self.grid_radius < 1:
            raise LabError(VALIDATION_ERROR, 422, f"grid_radius must lie in (0, 1), got {self.grid_radius}")
        if self.grid_points < 8:
            raise LabError(VALIDATION_ERROR, 422, f"grid_points must be >= 8, got {self.grid_points}")
        object.__setattr__(self, "taylor", coeffs)

        values = self.evaluate(self.grid())
        bound = float(np.max(np.abs(values)))
        if not bound < 1:
            raise LabError(
                VALIDATION_ERROR,
                422,
                f"omega is not a self-map of the disc on the grid: sup |omega| = {bound:.6g}",
            )
        object.__setattr__(self, "certified_bound", bound)
        object.__setattr__(self, "min_distance_to_one", float(np.min(np.abs(1 - values))))

    @property
    def order(self) -> int:
        return len(self.taylor) - 1

    @property
    def a0(self) -> complex:
        return self.taylor[0]

    def grid(self) -> np.ndarray:
        radii = np.linspace(0.0, self.grid_radius, _RADIAL_STEPS + 1)[1:]
        angles = np.linspace(0.0, 2 * math.pi, self.grid_points, endpoint=False)
        return np.concatenate([[0j], (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()])

    def evaluate(self, z) -> np.ndarray | complex:
        values = P.polyval(np.asarray(z, dtype=complex), np.array(self.taylor, dtype=complex))
        return complex(values) if np.ndim(values) == 0 else values

    def coefficients(self, length: int) -> np.ndarray:
        out = np.zeros(length, dtype=complex)
        k = min(length, len(self.taylor))
        out[:k] = self.taylor[:k]
        return out


@dataclass(frozen=True)
class TransferredSymbol:
    symbol: Symbol
    source: DiscSelfMap
    h: np.ndarray
    cutoff_exponent: int
    tail_estimate: float


def _series_quotient(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Power-series coefficients of num/den up to len(num)."""
    out = np.zeros(len(num), dtype=complex)
    for k in range(len(num)):
        acc = num[k] - np.dot(den[1 : k + 1], out[k - 1 :: -1][:k]) if k else num[0]
        out[k] = acc / den[0]
    return out


def transfer_symbol(omega: DiscSelfMap, cutoff_exponent: int) -> TransferredSymbol:
    """φ = 1/2 + h₀ + Σ_{1≤k≤K} h_k·2^{-ks} for h = (1 − ω)/(1 + ω)."""
    if cutoff_exponent < 0:
        raise LabError(VALIDATION_ERROR, 422, f"cutoff_exponent must be >= 0, got {cutoff_exponent}")
    if omega.min_distance_to_one < MIN_DISTANCE_TO_ONE:
        raise precondition(
            f"omega comes within {omega.min_distance_to_one:.3g} of 1 (need >= {MIN_DISTANCE_TO_ONE:g})"
        )

    length = 2 * cutoff_exponent + 1
    a = omega.coefficients(length)
    num = -a
    num[0] += 1.0
    den = a.copy()
    den[0] += 1.0
    h = _series_quotient(num, den)

    # Cauchy estimate on the grid circle: |h_k| ≤ sup_{|z|=r} |h| · r^{-k}
    circle = omega.grid_radius * np.exp(1j * np.linspace(0.0, 2 * math.pi, omega.grid_points, endpoint=False))
    w = omega.evaluate(circle)
    h_sup = float(np.max(np.abs((1 - w) / (1 + w))))
    k = np.arange(length)
    ceiling = INSTABILITY_FACTOR * h_sup * omega.grid_radius ** (-k.astype(float))
    unstable = np.nonzero(np.abs(h) > ceiling)[0]
    if unstable.size:
        first = int(unstable[0])
        raise LabError(
            NOT_CONVERGED,
            500,
            f"series division unstable: |h_{first}| = {abs(h[first]):.3g} exceeds {ceiling[first]:.3g}",
        )

    terms = [(1, 0.5 + h[0])] + [(2**j, h[j]) for j in range(1, cutoff_exponent + 1)]
    tail = float(np.sqrt(np.sum(np.abs(h[cutoff_exponent + 1 :]) ** 2)))
    logger.info("transferred symbol with %d powers of 2, tail estimate %.3g", cutoff_exponent, tail)
    return TransferredSymbol(
        symbol=Symbol(0, poly(terms)),
        source=omega,
        h=h[: cutoff_exponent + 1],
        cutoff_exponent=cutoff_exponent,
        tail_estimate=tail,
    )


def disc_composition_matrix(omega: DiscSelfMap, N: int) -> np.ndarray:
    """M[j, k] = [z^j] ω(z)^k for j, k < N (monomial basis of H²(𝔻))."""
    if N < 1:
        raise LabError(VALIDATION_ERROR, 422, f"N must be >= 1, got {N}")
    a = omega.coefficients(N)
    M = np.zeros((N, N), dtype=complex)
    power = np.zeros(N, dtype=complex)
    power[0] = 1.0
    for k in range(N):
        M[:, k] = power
        power = np.convolve(power, a)[:N]
    if not np.any(M.imag):
        return M.real
    return M
