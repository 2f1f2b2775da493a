"""Fixed point α = φ(α) of a bounded symbol with c0 = 0."""

import logging
from dataclasses import dataclass

from scipy.optimize import brentq

from compop.errors import LabError, NOT_CONVERGED, UNBOUNDED_SYMBOL, precondition
from compop.services.settings import get_settings
from compop.symbols.symbol import LinearSymbol, Symbol
from compop.symbols.validation import validate

logger = logging.getLogger(__name__)

RESIDUAL_TARGET = 1e-13
CROSS_CHECK_TOLERANCE = 1e-9
_MIN_DAMPING = 2.0**-30


@dataclass(frozen=True)
class FixedPoint:
    alpha: complex
    derivative: complex
    iterations: int
    cross_checked: bool


def _real_axis_root(sym: Symbol) -> float | None:
    """Bracketing root of φ(σ) − σ on (1/2, ∞) for real coefficients."""

    def g(sigma: float) -> float:
        return sym(sigma).real - sigma

    lo = 0.5
    hi = sym.c1.real + sym.coefficient_sum(skip_constant=True) + 1.0
    g_lo, g_hi = g(lo), g(hi)
    if g_lo * g_hi > 0:
        logger.warning("no sign change of phi(s) - s on [%.3g, %.3g]", lo, hi)
        return None
    return brentq(g, lo, hi, xtol=1e-15, rtol=4 * 2.0**-52, maxiter=500)


def fixed_point(sym: Symbol | LinearSymbol, max_steps: int | None = None) -> FixedPoint:
    """Damped Newton on φ(s) − s started at s = c1."""
    if isinstance(sym, LinearSymbol):
        sym = sym.to_symbol()
    if sym.c0 != 0:
        raise precondition(f"fixed point needs c0 = 0, got c0 = {sym.c0}")
    verdict = validate(sym)
    if verdict.verdict != "bounded":
        raise LabError(UNBOUNDED_SYMBOL, 422, f"symbol is not certified bounded: {verdict.reason}")
    if max_steps is None:
        max_steps = get_settings().newton_max_steps

    s = sym.c1
    f = sym(s) - s
    steps = 0
    while abs(f) > RESIDUAL_TARGET:
        if steps >= max_steps:
            raise LabError(NOT_CONVERGED, 500, f"no fixed point located in {max_steps} steps")
        slope = sym.derivative(s) - 1.0
        if slope == 0:
            raise LabError(NOT_CONVERGED, 500, "no fixed point located: stationary Newton step")
        step = f / slope
        damping = 1.0
        while True:
            candidate = s - damping * step
            f_candidate = sym(candidate) - candidate
            if abs(f_candidate) < abs(f) or damping <= _MIN_DAMPING:
                break
            damping /= 2.0
        if abs(f_candidate) >= abs(f):
            # damping exhausted: roundoff floor reached
            break
        s, f = candidate, f_candidate
        steps += 1

    if abs(f) > 1e-12:
        raise LabError(NOT_CONVERGED, 500, f"no fixed point located (residual {abs(f):.3g})")

    cross_checked = False
    if sym.psi.is_real:
        root = _real_axis_root(sym)
        if root is not None:
            gap = abs(root - s)
            cross_checked = gap <= CROSS_CHECK_TOLERANCE
            if not cross_checked:
                logger.warning("Newton fixed point %s disagrees with bisection %.17g", s, root)

    logger.info("fixed point %s after %d Newton steps", s, steps)
    return FixedPoint(alpha=s, derivative=sym.derivative(s), iterations=steps, cross_checked=cross_checked)


def residual(sym: Symbol, point: FixedPoint) -> float:
    return abs(sym(point.alpha) - point.alpha)

