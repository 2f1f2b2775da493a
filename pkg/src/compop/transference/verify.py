"""Compare a_n(C_φ) for φ = T∘ω∘I with a_n(C_ω) on H²(𝔻).

C_φ = C_I C_ω C_T and C_I is an isometry, so a_n(C_φ) = a_n(C_ω C_T). The
rows j < N of C_ω C_T have Gram matrix W G W*, with W[j, k] = [z^j] ω^k and
G = C_T C_T* in the monomial basis of H²(𝔻).
"""

import logging

import numpy as np
import scipy.fft
import scipy.linalg

from compop.errors import LabError, VALIDATION_ERROR
from compop.kernels.inner import zeta_regular_many
from compop.models import TransferReport
from compop.operators.fitting import NOISE_FLOOR_FACTOR, decay_fit, default_window
from compop.operators.matrix import assemble
from compop.operators.spectrum import approximation_numbers
from compop.transference.maps import DiscSelfMap, disc_composition_matrix, transfer_symbol

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF_EXPONENT = 64
GRAM_OVERSAMPLING = 8
# sampling radius ρ with ρ^N = GRAM_RADIUS_POWER
GRAM_RADIUS_POWER = 1.0 / 16


def _rotation_coefficient(omega: DiscSelfMap) -> complex | None:
    """r when ω(z) = r·z exactly."""
    taylor = omega.taylor
    if len(taylor) >= 2 and taylor[0] == 0 and all(a == 0 for a in taylor[2:]):
        return taylor[1]
    return None


def disc_approximation_numbers(omega: DiscSelfMap, N: int) -> tuple[np.ndarray, bool]:
    """a_n(C_ω) for n ≤ N and whether they are exact (ω(z) = rz gives |r|^{n−1})."""
    r = _rotation_coefficient(omega)
    if r is not None:
        return np.abs(r) ** np.arange(N, dtype=float), True
    if len(omega.taylor) == 1:
        values = np.zeros(N)
        values[0] = 1.0
        return values, True
    return scipy.linalg.svdvals(disc_composition_matrix(omega, N)), False


def _pole_gram(N: int) -> np.ndarray:
    """Coefficients of (1 + u)(1 + w̄)/(2(1 − u w̄))."""
    G = np.eye(N)
    G[0, 0] = 0.5
    idx = np.arange(N - 1)
    G[idx, idx + 1] = 0.5
    G[idx + 1, idx] = 0.5
    return G


def transfer_gram(N: int) -> np.ndarray:
    """G[k, l] = ⟨C_T* z^l, C_T* z^k⟩ in ℋ² for k, l < N.

    The generating kernel is ζ(T(u) + conj T(w)) = ζ(1 + a(u) + a(w̄)) with
    a(z) = (1 − z)/(1 + z). Its pole part has closed-form coefficients; the
    entire remainder ζ(1 + x) − 1/x is read off a 2-D FFT on |u| = |w| = ρ.
    """
    if N < 1:
        raise LabError(VALIDATION_ERROR, 422, f"N must be >= 1, got {N}")
    P = GRAM_OVERSAMPLING * N
    rho = GRAM_RADIUS_POWER ** (1.0 / N)
    circle = rho * np.exp(2j * np.pi * np.arange(P) / P)
    a = (1.0 - circle) / (1.0 + circle)

    samples = np.empty((P, P), dtype=complex)
    for p in range(P):
        samples[p] = zeta_regular_many(a[p] + a)
    k = np.arange(N)
    regular = scipy.fft.fft2(samples)[:N, :N] / P**2 / rho ** (k[:, None] + k[None, :])

    G = _pole_gram(N) + regular.real
    logger.debug("transfer Gram N = %d: max imaginary residue %.3g", N, float(np.max(np.abs(regular.imag))))
    return (G + G.T) / 2


def transferred_approximation_numbers(omega: DiscSelfMap, N: int) -> np.ndarray:
    """a_n(C_φ) for n ≤ N from the rows j < N of C_ω C_T.

    With ω(0) = 0 those rows only meet columns k < N and the Gram is exact;
    otherwise 2N columns are kept and the rest is dropped.
    """
    if N < 1:
        raise LabError(VALIDATION_ERROR, 422, f"N must be >= 1, got {N}")
    K = N if omega.a0 == 0 else 2 * N
    W = disc_composition_matrix(omega, K)[:N]
    lam, V = scipy.linalg.eigh(transfer_gram(K))
    if lam[0] < -NOISE_FLOOR_FACTOR * lam[-1]:
        logger.warning("transfer Gram has eigenvalue %.3g below zero", lam[0])
    root = V * np.sqrt(np.clip(lam, 0.0, None))
    return scipy.linalg.svdvals(W @ root)[:N]


def verify_transfer_inequality(
    omega: DiscSelfMap,
    N: int,
    window: tuple[int, int] | None = None,
    cutoff_exponent: int = DEFAULT_CUTOFF_EXPONENT,
    row_tolerance: float | None = None,
) -> TransferReport:
    """Per-n ratios a_n(C_φ)/a_n(C_ω) and geometric fits of both sequences.

    ``compression_values`` are the singular values of the Dirichlet-basis
    compression of the transferred symbol; they bound a_n(C_φ) from below.
    """
    transferred = transfer_symbol(omega, cutoff_exponent)
    disc, exact = disc_approximation_numbers(omega, N)
    values = transferred_approximation_numbers(omega, N)
    compression = approximation_numbers(assemble(transferred.symbol, N, row_tolerance), N)

    floor = NOISE_FLOOR_FACTOR * disc[0]
    ratios = [float(t / d) for t, d in zip(values, disc) if d > floor]

    if window is None:
        window = default_window(N)
    fits = []
    for seq in (disc, values):
        try:
            fits.append(decay_fit(seq, window).geometric)
        except LabError as e:
            logger.warning("no geometric fit: %s", e.detail)
            fits.append(None)

    if ratios:
        logger.info("transfer ratios over %d values: max %.4g", len(ratios), max(ratios))
    return TransferReport(
        n=N,
        disc_values=disc.tolist(),
        transferred_values=values.tolist(),
        compression_values=compression.tolist(),
        ratios=ratios,
        disc_fit=fits[0],
        transferred_fit=fits[1],
        window=window,
        tail_estimate=transferred.tail_estimate,
        exact_reference=exact,
    )
