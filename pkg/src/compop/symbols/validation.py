"""Boundedness verdicts for composition symbols.

Decisive rules, in order: linear symbols by κ ≥ 1/2; constant ψ; the
coefficient-sum bound Re c1 − Σ_{n≥2}|c_n|; finally a probe of Re ψ on the
imaginary axis, which can only refute the mapping property, never prove it.
"""

import logging

import numpy as np

from compop.dirichlet.poly import evaluate_many
from compop.models import ValidationVerdict
from compop.symbols.symbol import LinearSymbol, Symbol, as_linear, kappa

logger = logging.getLogger(__name__)

KAPPA_TOLERANCE = 1e-12
PROBE_TOLERANCE = 1e-12

# t on a logarithmic grid, both signs, plus t = 0
_PROBE_POSITIVE = np.logspace(-3, 6, 4000)
PROBE_GRID = np.concatenate([-_PROBE_POSITIVE[::-1], [0.0], _PROBE_POSITIVE])


def _linear_verdict(sym: LinearSymbol) -> ValidationVerdict:
    k = kappa(sym)
    if k >= 0.5 - KAPPA_TOLERANCE:
        return ValidationVerdict(verdict="bounded", reason=f"kappa = {k:.17g} >= 1/2", kappa=k)
    return ValidationVerdict(verdict="unbounded", reason=f"kappa = {k:.17g} < 1/2", kappa=k)


def boundary_minimum(sym: Symbol) -> float:
    """min over the probe grid of Re ψ(it)."""
    return float(np.min(evaluate_many(sym.psi, 1j * PROBE_GRID).real))


def validate(sym: Symbol | LinearSymbol) -> ValidationVerdict:
    """Decide whether C_φ is bounded on ℋ², or say that sampling cannot tell."""
    if isinstance(sym, LinearSymbol):
        return _linear_verdict(sym)

    c1 = sym.c1
    rest = sym.psi.without_constant()
    tail_sum = sym.coefficient_sum(skip_constant=True)

    if sym.c0 == 0:
        threshold = 0.5
        if not rest.terms:
            if c1.real > threshold:
                return ValidationVerdict(verdict="bounded", reason="constant psi with Re c1 > 1/2")
            return ValidationVerdict(verdict="unbounded", reason="constant psi with Re c1 <= 1/2")
        linear = as_linear(sym)
        if linear is not None:
            return _linear_verdict(linear)
        if c1.real - tail_sum >= threshold:
            return ValidationVerdict(
                verdict="bounded",
                reason="Re c1 - sum |c_n| >= 1/2 maps C_0 into C_1/2",
            )
    else:
        threshold = 0.0
        if not sym.psi.terms:
            return ValidationVerdict(verdict="bounded", reason="psi vanishes identically")
        if not rest.terms:
            if c1.real > 0:
                return ValidationVerdict(verdict="bounded", reason="constant psi with Re c1 > 0")
            return ValidationVerdict(verdict="unbounded", reason="constant psi with Re c1 <= 0")
        if c1.real > tail_sum:
            return ValidationVerdict(
                verdict="bounded",
                reason="Re c1 > sum_{n>=2} |c_n| maps C_0 into C_0",
            )

    probe = boundary_minimum(sym)
    logger.info("boundary probe: min Re psi(it) = %.6g (threshold %.3g)", probe, threshold)
    if probe < threshold - PROBE_TOLERANCE:
        return ValidationVerdict(
            verdict="unbounded",
            reason=f"Re psi(it) = {probe:.17g} below {threshold:g} on the boundary probe",
            probe_min=probe,
        )
    return ValidationVerdict(
        verdict="undecidable",
        reason="boundary probe inconclusive; sampling cannot certify the mapping property",
        probe_min=probe,
    )
