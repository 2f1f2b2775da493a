"""Least-squares decay fits for sequences of approximation numbers."""

import logging
import math

import numpy as np

from compop.errors import LabError, VALIDATION_ERROR
from compop.models import DecayFits, GeometricFit, PowerFit

logger = logging.getLogger(__name__)

MIN_POINTS = 4

# values this close to a₁·eps are rounding noise, not decay
NOISE_FLOOR_FACTOR = 64 * np.finfo(float).eps


def default_window(count: int) -> tuple[int, int]:
    """[max(10, 5% of count), 50% of count], widened to [2, count] for short sequences."""
    lo = max(10, int(0.05 * count))
    hi = int(0.5 * count)
    if hi - lo + 1 < MIN_POINTS:
        return 2, count
    return lo, hi


def _lstsq(design: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, float]:
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return coef, float(np.linalg.norm(y - design @ coef))


def decay_fit(
    values: np.ndarray,
    window: tuple[int, int] | None = None,
    noise_floor: float | None = None,
) -> DecayFits:
    """Fit log a_n on n ∈ [n_lo, n_hi] (1-based) three ways.

    power:       α·log n + β·log log n + γ
    power_plain: α·log n + γ
    geometric:   n·log r + c

    Values at or below the noise floor (default 64·eps·a₁) are left out.
    """
    a = np.asarray(values, dtype=float)
    count = len(a)
    if window is None:
        window = default_window(count)
    n_lo, n_hi = window
    if n_lo < 2 or n_hi > count or n_lo > n_hi:
        raise LabError(
            VALIDATION_ERROR,
            422,
            f"window [{n_lo}, {n_hi}] must satisfy 2 <= n_lo <= n_hi <= {count}",
        )
    if noise_floor is None:
        noise_floor = NOISE_FLOOR_FACTOR * max(a[0], 0.0)

    n = np.arange(n_lo, n_hi + 1)
    window_values = a[n_lo - 1 : n_hi]
    keep = window_values > noise_floor
    used = int(keep.sum())
    if used < MIN_POINTS:
        raise LabError(
            VALIDATION_ERROR,
            422,
            f"only {used} values above the noise floor {noise_floor:.3g} in [{n_lo}, {n_hi}]",
        )
    if used < len(n):
        logger.warning("decay fit: %d of %d values at the noise floor were skipped", len(n) - used, len(n))

    x = n[keep].astype(float)
    y = np.log(window_values[keep])
    ones = np.ones_like(x)
    log_x = np.log(x)

    coef, res = _lstsq(np.column_stack([log_x, np.log(log_x), ones]), y)
    power = PowerFit(alpha=float(coef[0]), beta=float(coef[1]), gamma=float(coef[2]), residual=res)

    coef, res = _lstsq(np.column_stack([log_x, ones]), y)
    plain = PowerFit(alpha=float(coef[0]), beta=0.0, gamma=float(coef[1]), residual=res)

    coef, res = _lstsq(np.column_stack([x, ones]), y)
    geometric = GeometricFit(log_r=float(coef[0]), c=float(coef[1]), residual=res)

    logger.info(
        "decay fit on [%d, %d]: alpha %.4f beta %.4f, plain alpha %.4f, r %.4f",
        n_lo,
        n_hi,
        power.alpha,
        power.beta,
        plain.alpha,
        math.exp(geometric.log_r),
    )
    return DecayFits(
        power=power,
        power_plain=plain,
        geometric=geometric,
        window=(n_lo, n_hi),
        points_used=used,
    )
