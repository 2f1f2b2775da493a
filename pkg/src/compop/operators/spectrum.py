"""Singular values, eigenvalues and the norm quantities built from them."""

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from compop.errors import LabError, VALIDATION_ERROR, precondition
from compop.operators.matrix import (
    TruncatedOperator,
    as_symbol,
    column_with_deficit,
    ensure_not_unbounded,
    square_compression,
)
from compop.services.settings import get_settings
from compop.symbols.symbol import LinearSymbol, Symbol

logger = logging.getLogger(__name__)

WEYL_TOLERANCE = 1e-10

# divergence test on the last decade of column norms
_SLOPE_MARGIN = 0.05
_LOGLOG_CUTOFF = -1.0
_MIN_TREND_COLUMNS = 40


def _check_count(count: int, op: TruncatedOperator) -> None:
    if count < 1 or count > op.n_columns:
        raise LabError(
            VALIDATION_ERROR,
            422,
            f"count must lie in [1, {op.n_columns}], got {count}",
        )


def _svdvals(matrix: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.svdvals(matrix, check_finite=False)
    except np.linalg.LinAlgError:
        logger.warning("gesdd did not converge, retrying with gesvd")
        return scipy.linalg.svd(matrix, compute_uv=False, lapack_driver="gesvd")


def approximation_numbers(op: TruncatedOperator, count: int | None = None) -> np.ndarray:
    """Top ``count`` singular values in descending order.

    A matrix with fewer rows than ``count`` has rank below ``count``; the
    missing singular values are exactly zero.
    """
    if count is None:
        count = op.n_columns
    _check_count(count, op)
    values = _svdvals(op.entries)[:count]
    if len(values) < count:
        values = np.concatenate([values, np.zeros(count - len(values))])
    return values


def eigenvalues(op: TruncatedOperator, count: int | None = None) -> np.ndarray:
    """Eigenvalues of the square compression, largest modulus first."""
    if count is None:
        count = op.n_columns
    _check_count(count, op)
    lam = scipy.linalg.eigvals(square_compression(op), check_finite=False)
    order = np.argsort(-np.abs(lam), kind="stable")
    return lam[order][:count]


@dataclass(frozen=True)
class WeylCheck:
    holds: bool
    margin: float
    n_max: int


def weyl_check(op: TruncatedOperator, n_max: int) -> WeylCheck:
    """Π_{k≤n} |λ_k| ≤ Π_{k≤n} a_k for n ≤ n_max, on the square compression."""
    _check_count(n_max, op)
    square = square_compression(op)
    a = _svdvals(square)[:n_max]
    lam = np.sort(np.abs(scipy.linalg.eigvals(square, check_finite=False)))[::-1][:n_max]
    margin = float(np.min(np.cumprod(a) - np.cumprod(lam)))
    return WeylCheck(holds=margin >= -WEYL_TOLERANCE, margin=margin, n_max=n_max)


# ---------------------------------------------------------------------------
# Hilbert–Schmidt and Schatten quantities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HSNorm:
    """Σ_{m≤N} ‖m^{-φ}‖² and the trend of the summands."""

    value: float
    partial_sums: np.ndarray
    divergent_looking: bool
    alpha: float
    beta: float


def _column_norm_trend(norms_sq: np.ndarray) -> tuple[float, float]:
    """Fit log‖col_m‖² = α log m + β log log m + γ over the last decade."""
    N = len(norms_sq)
    m = np.arange(1, N + 1)
    lo = max(3, N // 10)
    mask = (m >= lo) & (norms_sq > 0)
    if mask.sum() < 4:
        raise LabError(VALIDATION_ERROR, 422, f"need at least 4 positive column norms, N = {N}")
    x = m[mask].astype(float)
    design = np.column_stack([np.log(x), np.log(np.log(x)), np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, np.log(norms_sq[mask]), rcond=None)
    return float(coef[0]), float(coef[1])


def hs_norm_sq(
    sym: Symbol | LinearSymbol,
    N: int,
    row_tolerance: float | None = None,
) -> HSNorm:
    """Partial Hilbert–Schmidt norm with a divergence indicator.

    The summands look divergent when they decay no faster than
    1/(m·log m): slope α above −1, or α ≈ −1 with log-log exponent β ≥ −1.
    Below 40 columns no trend is fitted: α and β are NaN and the
    indicator is False.
    """
    if N < 1:
        raise LabError(VALIDATION_ERROR, 422, f"N must be >= 1, got {N}")
    if row_tolerance is None:
        row_tolerance = get_settings().row_tolerance
    sym = as_symbol(sym)
    ensure_not_unbounded(sym)

    norms_sq = np.empty(N)
    for m in range(1, N + 1):
        col, _ = column_with_deficit(sym, m, row_tolerance)
        norms_sq[m - 1] = col.norm2**2
    partial = np.cumsum(norms_sq)
    if N < _MIN_TREND_COLUMNS:
        alpha = beta = math.nan
        divergent = False
    else:
        alpha, beta = _column_norm_trend(norms_sq)
        divergent = alpha > -1 + _SLOPE_MARGIN or (alpha >= -1 - _SLOPE_MARGIN and beta >= _LOGLOG_CUTOFF)
    logger.info("HS partial norm %.6g at N = %d (alpha %.3f, beta %.3f)", partial[-1], N, alpha, beta)
    return HSNorm(
        value=float(partial[-1]),
        partial_sums=partial,
        divergent_looking=divergent,
        alpha=alpha,
        beta=beta,
    )


def schatten_partial_sums(values: np.ndarray, p: float) -> np.ndarray:
    """Running Σ_{k≤n} a_k^p (the p-th power of the partial Schatten norm)."""
    if not p > 0:
        raise LabError(VALIDATION_ERROR, 422, f"p must be positive, got {p}")
    return np.cumsum(np.asarray(values, dtype=float) ** p)


# ---------------------------------------------------------------------------
# Lower bounds from a single eigenvalue
# ---------------------------------------------------------------------------


def weyl_lower_bounds(a1: float, eigenvalue: complex, count: int) -> np.ndarray:
    """a_n ≥ a₁^{-1}·|λ|^{2n+1} for n = 1..count."""
    modulus = abs(eigenvalue)
    if not a1 > 0:
        raise precondition("a1 must be positive")
    if not 0 < modulus < 1:
        raise precondition(f"need 0 < |lambda| < 1, got {modulus}")
    n = np.arange(1, count + 1)
    return np.exp((2 * n + 1) * math.log(modulus) - math.log(a1))


def power_lower_bounds(a1: float, gamma: float, count: int, N: int = 2) -> np.ndarray:
    """Polynomial lower bound from an algebraic decay a_n ≳ n^{-γ}.

    a_n ≥ a₁^{-1/(N−1)}·(N·n)^{-γ/(1−1/N)} for n = 1..count.
    """
    if not a1 > 0:
        raise precondition("a1 must be positive")
    if N < 2:
        raise precondition(f"N must be >= 2, got {N}")
    exponent = gamma / (1.0 - 1.0 / N)
    n = np.arange(1, count + 1, dtype=float)
    return a1 ** (-1.0 / (N - 1)) * np.power(N * n, -exponent)
