"""Explicit target/preimage configurations feeding ``bernstein_lower_bound``."""

import logging
import math

import numpy as np

from compop.dirichlet.zeta import zeta_real
from compop.errors import LabError, NOT_CONVERGED, precondition
from compop.kernels.bounds import PointConfiguration, make_configuration
from compop.services.settings import get_settings
from compop.symbols.symbol import LinearSymbol, RestrictedRangeLift, Symbol, bohr_lift, kappa

logger = logging.getLogger(__name__)

KAPPA_TOLERANCE = 1e-12
MAX_NU_DOUBLINGS = 20


def centered_indices(n: int) -> np.ndarray:
    """The n integers j with −n/2 < j ≤ n/2."""
    return np.arange(n) - (n - 1) // 2


def _lattice(n: int, dims: int, budget: int) -> np.ndarray:
    """β ∈ {1..n}^dims, or an evenly strided subset of ``budget`` of them."""
    if dims == 0:
        return np.zeros((1, 0), dtype=np.int64)
    total = n**dims
    if total <= budget:
        flat = np.arange(total, dtype=np.int64)
    else:
        flat = np.array([i * total // budget for i in range(budget)], dtype=np.int64)
        logger.info("preimage lattice of %d points sampled down to %d", total, budget)
    digits = np.empty((len(flat), dims), dtype=np.int64)
    rest = flat.copy()
    for ell in range(dims - 1, -1, -1):
        digits[:, ell] = rest % n
        rest //= n
    return digits + 1


# ---------------------------------------------------------------------------
# Boundary grid for κ = 1/2
# ---------------------------------------------------------------------------


def boundary_grid(sym: LinearSymbol, n: int, budget: int | None = None) -> PointConfiguration:
    """Targets 1/2 + νn^{-2} + ijn^{-2} with n^{d−1} polydisc preimages each.

    Coordinates 2..d sit on the circle of radius 1 − n^{-2} at angles βn^{-2};
    the first coordinate is solved from Φ(z) = s_j. ν doubles from 1 until
    every first coordinate has modulus < 1 − n^{-2}/2.
    """
    if n < 2:
        raise precondition(f"n must be >= 2, got {n}")
    if sym.d < 1:
        raise precondition("grid needs at least one frequency")
    if sym.c1.imag != 0.0 or any(c.imag != 0.0 or c.real >= 0.0 for c in sym.coefficients):
        raise precondition("grid needs real c1 and negative coefficients; apply reduce_to_real first")
    if abs(kappa(sym) - 0.5) > KAPPA_TOLERANCE:
        raise precondition(f"grid needs kappa = 1/2, got {kappa(sym):.17g}")
    if budget is None:
        budget = get_settings().preimage_budget

    h = 1.0 / n**2
    moduli = np.array([abs(c) for c in sym.coefficients])
    lead = moduli[0]
    j = centered_indices(n)

    beta = _lattice(n, sym.d - 1, budget)
    others = (1.0 - h) * np.exp(1j * beta * h)
    tail = (1.0 - others) @ moduli[1:] if sym.d > 1 else np.zeros(1, dtype=complex)

    nu = 1.0
    for _ in range(MAX_NU_DOUBLINGS + 1):
        targets = 0.5 + nu * h + 1j * j * h
        first = 1.0 - (targets[:, None] - 0.5 - tail[None, :]) / lead
        if np.max(np.abs(first)) < 1.0 - h / 2:
            break
        nu *= 2.0
    else:
        raise LabError(NOT_CONVERGED, 500, f"no admissible nu up to 2^{MAX_NU_DOUBLINGS} for n = {n}")
    logger.info("boundary grid n = %d, d = %d: nu = %g, %d preimages per target", n, sym.d, nu, len(beta))

    groups = [np.column_stack([first[k], others]) for k in range(n)]
    return make_configuration(
        targets,
        groups,
        "polydisc",
        bohr_lift(sym),
        q=sym.frequencies,
        params={"nu": nu, "preimages_per_target": float(len(beta)), "lattice_size": float(n ** (sym.d - 1))},
    )


# ---------------------------------------------------------------------------
# Horizontal chain for c0 ≥ 1
# ---------------------------------------------------------------------------


def horizontal_chain(sym: Symbol, n: int, sigma0: float) -> PointConfiguration:
    """Preimages σ₀ + iak on a vertical line, targets φ(σ₀ + iak).

    a = 3·Σ|c_n|n^{-σ₀} bounds 3·sup_{Re s ≥ σ₀}|ψ(s)|, so targets stay at
    least a/3 apart; a = 1 when ψ ≡ 0.
    """
    if sym.c0 < 1:
        raise precondition(f"horizontal chain needs c0 >= 1, got {sym.c0}")
    if not sigma0 > 0.5:
        raise precondition(f"sigma0 must exceed 1/2, got {sigma0}")
    if n < 1:
        raise precondition(f"n must be >= 1, got {n}")

    spacing = 3.0 * sym.coefficient_sum(sigma0)
    if spacing == 0.0:
        spacing = 1.0
    preimages = sigma0 + 1j * spacing * centered_indices(n)
    targets = sym.evaluate_many(preimages)

    zeta_pre = zeta_real(2.0 * sigma0)
    factor = min(math.sqrt(zeta_real(2.0 * s.real) / zeta_pre) for s in targets)
    return make_configuration(
        targets,
        [np.array([z]) for z in preimages],
        "half-plane",
        sym,
        params={"spacing": spacing, "sigma0": sigma0, "chain_factor": factor},
    )


# ---------------------------------------------------------------------------
# Restricted range
# ---------------------------------------------------------------------------


def restricted_range_chain(c1: complex, n: int) -> PointConfiguration:
    """Disc points e^{-n^{-2}(1 + i(n+j))} mapped by c1 + (1+z)/(1−z)."""
    if n < 1:
        raise precondition(f"n must be >= 1, got {n}")
    lift = RestrictedRangeLift(complex(c1))
    if not lift.c1.real > 0.5:
        raise precondition("restricted range needs Re c1 > 1/2")
    h = 1.0 / n**2
    z = np.exp(-h * (1.0 + 1j * (n + centered_indices(n))))
    targets = lift.evaluate_many(z[:, None])
    return make_configuration(
        targets,
        [np.array([[w]]) for w in z],
        "polydisc",
        lift,
        q=lift.frequencies,
    )
