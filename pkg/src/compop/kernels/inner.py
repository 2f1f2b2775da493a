"""Reproducing kernels of ℋ² at half-plane points and at polydisc points.

Half-plane: K_w(s) = ζ(s + w̄), ‖K_w‖² = ζ(2 Re w).
Polydisc (frequencies q): K^q_w(s) = Π_j 1/(1 − w̄_j q_j^{-s}), ‖K^q_w‖² = Π_j 1/(1 − |w_j|²).
Inner products are linear in the first slot: ⟨K_a, K_b⟩ = K_a(b).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli

from compop.dirichlet.poly import as_point
from compop.dirichlet.zeta import zeta_real
from compop.errors import LabError, TOLERANCE_UNREACHABLE, VALIDATION_ERROR

ZETA_TOLERANCE = 1e-12
_MAX_ZETA_TERMS = 10**7
_SUM_BLOCK = 512
_EM_ORDER = 12
_BERNOULLI = bernoulli(2 * _EM_ORDER)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point s with Re s > 1/2."""

    s: complex

    def __post_init__(self) -> None:
        s = as_point(self.s)
        if not s.real > 0.5:
            raise LabError(VALIDATION_ERROR, 422, f"half-plane point needs Re s > 1/2, got {s}")
        object.__setattr__(self, "s", s)

    @property
    def norm_sq(self) -> float:
        return zeta_real(2 * self.s.real)


@dataclass(frozen=True)
class PolydiscPoint:
    """A point w of the open polydisc 𝔻^d attached to frequencies q."""

    w: tuple[complex, ...]
    q: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.w) != len(self.q):
            raise LabError(VALIDATION_ERROR, 422, f"{len(self.w)} coordinates for {len(self.q)} frequencies")
        w = tuple(as_point(x) for x in self.w)
        if any(abs(x) >= 1 for x in w):
            raise LabError(VALIDATION_ERROR, 422, "polydisc point needs every |w_j| < 1")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "q", tuple(self.q))

    @property
    def norm_sq(self) -> float:
        return math.prod(1.0 / (1.0 - abs(x) ** 2) for x in self.w)


KernelPoint = HalfPlanePoint | PolydiscPoint


# ---------------------------------------------------------------------------
# Zeta off the real axis
# ---------------------------------------------------------------------------


def _summation_length(z: np.ndarray, tol: float) -> int:
    """M for Euler–Maclaurin with the B₂ and B₄ corrections.

    The next correction, |z(z+1)(z+2)(z+3)|·M^{-x-3}/(720(x+3)), is kept below
    ``tol``; M ≥ |Im z| keeps the asymptotic regime.
    """
    x = z.real
    size = np.abs(z * (z + 1) * (z + 2) * (z + 3)) / (720.0 * (x + 3))
    needed = np.power(size / tol, 1.0 / (x + 3))
    M = int(math.ceil(max(16.0, float(np.max(needed)), float(np.max(np.abs(z.imag))))))
    if M > _MAX_ZETA_TERMS:
        raise LabError(TOLERANCE_UNREACHABLE, 500, f"zeta needs {M} terms at max |Im z| = {np.max(np.abs(z.imag)):.3g}")
    return M


def zeta_many(z: np.ndarray, tol: float = ZETA_TOLERANCE) -> np.ndarray:
    """ζ(z) elementwise for Re z > 1."""
    z = np.asarray(z, dtype=complex)
    if z.size == 0:
        return z.copy()
    if np.any(z.real <= 1.0):
        raise LabError(VALIDATION_ERROR, 422, "pole/divergence: zeta needs Re z > 1")
    flat = z.ravel()
    M = _summation_length(flat, tol)

    total = np.zeros(flat.shape, dtype=complex)
    # descending blocks: small terms first
    for stop in range(M - 1, 0, -_SUM_BLOCK):
        start = max(1, stop - _SUM_BLOCK + 1)
        logs = np.log(np.arange(stop, start - 1, -1, dtype=float))
        total += np.exp(-np.outer(flat, logs)).sum(axis=1)

    log_M = math.log(M)
    M_pow = np.exp(-flat * log_M)
    total += M * M_pow / (flat - 1)
    total += M_pow / 2
    total += flat * M_pow / (12 * M)
    total -= flat * (flat + 1) * (flat + 2) * M_pow / (720 * M**3)
    return total.reshape(z.shape)


def zeta_regular_many(x: np.ndarray) -> np.ndarray:
    """ζ(1 + x) − 1/x elementwise for Re x > 0.

    Euler–Maclaurin through B_{2·_EM_ORDER} with M ≥ |1 + x| + 2·_EM_ORDER;
    the pole cancels inside (M^{-x} − 1)/x, taken through expm1.
    """
    x = np.asarray(x, dtype=complex)
    if x.size == 0:
        return x.copy()
    if np.any(x.real <= 0.0):
        raise LabError(VALIDATION_ERROR, 422, "regular part of zeta needs Re x > 0")
    s = 1.0 + x.ravel()
    M = max(16, int(math.ceil(float(np.max(np.abs(s))))) + 2 * _EM_ORDER)
    if M > _MAX_ZETA_TERMS:
        raise LabError(TOLERANCE_UNREACHABLE, 500, f"zeta needs {M} terms at max |x| = {np.max(np.abs(x)):.3g}")

    total = np.zeros(s.shape, dtype=complex)
    for stop in range(M - 1, 0, -_SUM_BLOCK):
        start = max(1, stop - _SUM_BLOCK + 1)
        logs = np.log(np.arange(stop, start - 1, -1, dtype=float))
        total += np.exp(-np.outer(s, logs)).sum(axis=1)

    log_M = math.log(M)
    M_pow = np.exp(-s * log_M)
    total += np.expm1(-x.ravel() * log_M) / x.ravel()
    total += M_pow / 2
    rising = s.copy()
    power = M_pow / M
    for j in range(1, _EM_ORDER + 1):
        total += _BERNOULLI[2 * j] / math.factorial(2 * j) * rising * power
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        power = power / M**2
    return total.reshape(x.shape)


# ---------------------------------------------------------------------------
# Inner products and Gram blocks
# ---------------------------------------------------------------------------


def kernel_inner(a: KernelPoint, b: KernelPoint) -> complex:
    """⟨K_a, K_b⟩ = K_a(b)."""
    if isinstance(a, HalfPlanePoint) and isinstance(b, HalfPlanePoint):
        z = b.s + a.s.conjugate()
        if z.imag == 0.0:
            return complex(zeta_real(z.real))
        return complex(zeta_many(np.array([z]))[0])
    if isinstance(a, PolydiscPoint) and isinstance(b, PolydiscPoint):
        if a.q != b.q:
            raise LabError(VALIDATION_ERROR, 422, f"frequency lists differ: {a.q} vs {b.q}")
        return complex(math.prod(1.0 / (1.0 - y * x.conjugate()) for x, y in zip(a.w, b.w)))
    raise LabError(VALIDATION_ERROR, 422, "kernel points of mixed variants")


def halfplane_gram(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """G[p, r] = ⟨K_{y_r}, K_{x_p}⟩ = ζ(x_p + ȳ_r)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return zeta_many(x[:, None] + np.conj(y)[None, :])


def polydisc_gram(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """G[p, r] = ⟨K_{y_r}, K_{x_p}⟩ = Π_ℓ 1/(1 − x_{p,ℓ}·ȳ_{r,ℓ}) for arrays of shape (P, d)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    prod = np.ones((x.shape[0], y.shape[0]), dtype=complex)
    for ell in range(x.shape[1]):
        prod /= 1.0 - np.outer(x[:, ell], np.conj(y[:, ell]))
    return prod


def halfplane_norm_sq(s: np.ndarray) -> np.ndarray:
    return np.array([zeta_real(2 * v.real) for v in np.atleast_1d(np.asarray(s, dtype=complex))])


def polydisc_norm_sq(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    return np.prod(1.0 / (1.0 - np.abs(w) ** 2), axis=-1)
