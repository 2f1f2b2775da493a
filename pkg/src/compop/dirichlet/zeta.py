"""Riemann zeta on the real half-line x > 1 by direct summation."""

import math

import numpy as np

from compop.errors import LabError, TOLERANCE_UNREACHABLE, VALIDATION_ERROR

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_TERMS = 10**8

_MIN_TERMS = 16
_CHUNK = 1 << 20


def summation_length(x: float, tolerance: float = DEFAULT_TOLERANCE) -> int:
    """Number of terms M making the tail-correction error x·M^{-x-1}/12 ≤ tolerance."""
    return max(_MIN_TERMS, math.ceil((x / (12.0 * tolerance)) ** (1.0 / (x + 1.0))))


def zeta_real(
    x: float,
    tolerance: float = DEFAULT_TOLERANCE,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """ζ(x) for real x > 1 to absolute error ≤ ``tolerance``.

    Σ_{n≤M} n^{-x} plus the integral tail M^{1-x}/(x−1) with its endpoint
    corrections −M^{-x}/2 + x·M^{-x-1}/12. M is sized so that even without
    the last correction the error would stay below x·M^{-x-1}/12 ≤ tolerance.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 1.0:
        raise LabError(VALIDATION_ERROR, 422, f"zeta_real: pole/divergence at x = {x}")
    m = summation_length(x, tolerance)
    if m > max_terms:
        raise LabError(
            TOLERANCE_UNREACHABLE,
            500,
            f"zeta_real({x}) needs {m} terms for tolerance {tolerance:g} (cap {max_terms})",
        )
    # largest terms last so the small ones are not swallowed
    partial = 0.0
    for stop in range(m, 0, -_CHUNK):
        start = max(0, stop - _CHUNK)
        n = np.arange(stop, start, -1, dtype=np.float64)
        partial += float(np.sum(n**-x))
    tail = m ** (1.0 - x) / (x - 1.0) - 0.5 * m**-x + x * m ** (-x - 1.0) / 12.0
    return partial + tail
