"""Experiment orchestration shared by the CLI and the HTTP routers."""

import logging
import math

import numpy as np

from compop.carleson.geometry import interpolation_constant_bound, pseudo_distance
from compop.carleson.pullback import pullback_profile
from compop.dirichlet.poly import poly
from compop.dirichlet.zeta import zeta_real
from compop.errors import LabError, precondition
from compop.kernels.bounds import PointConfiguration, bernstein_lower_bound
from compop.kernels.constructions import boundary_grid, horizontal_chain, restricted_range_chain
from compop.models import (
    ComplexPoint,
    DecayReport,
    FixedPointReport,
    LowerBoundReport,
    LowerBoundRow,
    PullbackProfile,
    SelfTestCheck,
    TransferReport,
    ValidationVerdict,
)
from compop.operators.matrix import assemble
from compop.operators.report import compression_report
from compop.operators.spectrum import approximation_numbers
from compop.symbols.fixed_point import fixed_point
from compop.symbols.symbol import (
    BohrLift,
    LinearSymbol,
    RestrictedRangeLift,
    Symbol,
    as_linear,
    bohr_lift,
    reduce_to_real,
)
from compop.symbols.validation import validate
from compop.transference.maps import DiscSelfMap
from compop.transference.verify import verify_transfer_inequality

logger = logging.getLogger(__name__)

Target = Symbol | LinearSymbol | RestrictedRangeLift


def _linear_form(sym: Symbol | LinearSymbol) -> LinearSymbol | None:
    return sym if isinstance(sym, LinearSymbol) else as_linear(sym)


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------


def run_validate(sym: Symbol | LinearSymbol) -> ValidationVerdict:
    return validate(sym)


def run_fixed_point(sym: Symbol | LinearSymbol) -> FixedPointReport:
    fp = fixed_point(sym)
    return FixedPointReport(
        alpha=ComplexPoint.of(fp.alpha),
        derivative=ComplexPoint.of(fp.derivative),
        iterations=fp.iterations,
        cross_checked=fp.cross_checked,
    )


# ---------------------------------------------------------------------------
# Decay
# ---------------------------------------------------------------------------


def run_decay(
    sym: Symbol | LinearSymbol,
    N: int,
    window: tuple[int, int] | None = None,
    row_tolerance: float | None = None,
) -> DecayReport:
    return compression_report(sym, N, window=window, row_tolerance=row_tolerance)


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------


def run_lowerbound(target: Target, n_list: list[int], sigma0: float = 1.0) -> LowerBoundReport:
    """Kernel-subspace lower bounds, one row per n.

    Restricted-range lifts use the disc chain, c0 ≥ 1 symbols the horizontal
    chain and linear symbols (κ = 1/2) the boundary grid of their real form.
    """
    if isinstance(target, RestrictedRangeLift):
        construction, d = "restricted", 1

        def build(n: int) -> PointConfiguration:
            return restricted_range_chain(target.c1, n)

    elif isinstance(target, Symbol) and target.c0 >= 1:
        construction, d = "chain", 1

        def build(n: int) -> PointConfiguration:
            return horizontal_chain(target, n, sigma0)

    else:
        linear = _linear_form(target)
        if linear is None:
            raise precondition("no lower-bound construction for a non-linear symbol with c0 = 0")
        reduced = reduce_to_real(linear)
        construction, d = "grid", linear.d

        def build(n: int) -> PointConfiguration:
            return boundary_grid(reduced, n)

    rows = []
    for n in n_list:
        config = build(n)
        bound = bernstein_lower_bound(config)
        rows.append(
            LowerBoundRow(
                n=n,
                lower_bound=bound.value,
                normalized=bound.value * n ** ((d - 1) / 2),
                preimages=config.preimage_count,
                jitter=bound.jitter,
                nu=config.params.get("nu"),
            )
        )
        logger.info("%s lower bound n = %d: %.6g", construction, n, bound.value)
    return LowerBoundReport(construction=construction, d=d, rows=rows)


# ---------------------------------------------------------------------------
# Carleson profile
# ---------------------------------------------------------------------------


def lift_for(target: Target) -> BohrLift | RestrictedRangeLift:
    if isinstance(target, RestrictedRangeLift):
        return target
    linear = _linear_form(target)
    if linear is None:
        raise precondition("pullback profile needs a linear symbol or a restricted-range lift")
    return bohr_lift(linear)


def run_carleson(
    target: Target,
    epsilons: list[float],
    samples: int | None = None,
    seed: int | None = None,
) -> PullbackProfile:
    return pullback_profile(lift_for(target), epsilons, samples=samples, seed=seed)


# ---------------------------------------------------------------------------
# Transference
# ---------------------------------------------------------------------------


def run_transfer(omega: DiscSelfMap, N: int, window: tuple[int, int] | None = None) -> TransferReport:
    return verify_transfer_inequality(omega, N, window=window)


# ---------------------------------------------------------------------------
# Self test
# ---------------------------------------------------------------------------


def _check(name: str, fn) -> SelfTestCheck:
    try:
        passed, detail = fn()
    except LabError as e:
        return SelfTestCheck(name=name, passed=False, detail=f"{e.code}: {e.detail}")
    return SelfTestCheck(name=name, passed=bool(passed), detail=detail)


def _zeta_two():
    err = abs(zeta_real(2.0) - math.pi**2 / 6)
    return err <= 1e-12, f"|zeta(2) - pi^2/6| = {err:.3g}"


def _diagonal():
    values = approximation_numbers(assemble(Symbol(1, poly({1: 1.0})), 50))
    err = float(np.max(np.abs(values - 1.0 / np.arange(1, 51))))
    return err <= 1e-10, f"max |a_n - 1/n| = {err:.3g}"


def _rank_one():
    values = approximation_numbers(assemble(Symbol(0, poly({1: 2.0})), 200), 2)
    err = abs(values[0] - math.sqrt(zeta_real(4.0)))
    return err <= 1e-6 and values[1] <= 1e-12, f"a_1 error {err:.3g}, a_2 = {values[1]:.3g}"


def _pseudo_distance():
    err = abs(pseudo_distance(1, 1 + 1j) - 1 / math.sqrt(2))
    return err <= 1e-12, f"rho(1, 1+i) error {err:.3g}"


def _interpolation_formula():
    value = interpolation_constant_bound(1.0, 1.0, 2.0, 1.0)
    return abs(value - 2**5.5) <= 1e-9, f"C M^(2t+6) R^(2t+7/2) = {value:.10g}"


def _chain_below_diagonal():
    n = 4
    bound = bernstein_lower_bound(horizontal_chain(Symbol(1, poly({1: 1.0})), n, 1.0)).value
    return bound <= 1.0 / n + 1e-9, f"bound {bound:.6g} vs a_{n} = {1 / n:.6g}"


SELF_CHECKS = {
    "zeta_two": _zeta_two,
    "diagonal_exactness": _diagonal,
    "rank_one_norm": _rank_one,
    "pseudo_distance": _pseudo_distance,
    "interpolation_formula": _interpolation_formula,
    "chain_below_diagonal": _chain_below_diagonal,
}


def run_selftest() -> list[SelfTestCheck]:
    return [_check(name, fn) for name, fn in SELF_CHECKS.items()]
