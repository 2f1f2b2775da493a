"""Point configurations and the kernel-subspace lower bound for a_n(C_φ).

For targets s_j = φ(z) over preimage groups Z_j, C_φ* maps
g_j = Σ_{z∈Z_j} ω_z K_z (ω normalized to sum 1 per group) onto K_{s_j}. On
E = span{g_j} the smallest ratio ‖C_φ* g‖/‖g‖ is sqrt(λ_min) of the pencil
A·b = λ·B·b with A the target Gram and B the Gram of the g_j.
"""

import logging
from dataclasses import dataclass, field
from typing import Literal, Protocol

import numpy as np
import scipy.linalg

from compop.errors import DEGENERATE_SYSTEM, LabError, VALIDATION_ERROR, precondition
from compop.kernels.inner import halfplane_gram, halfplane_norm_sq, polydisc_gram, polydisc_norm_sq
from compop.services.settings import get_settings

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10
JITTER_FACTOR = 1e-14

Variant = Literal["half-plane", "polydisc"]


class PointMap(Protocol):
    def evaluate_many(self, z: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class PointConfiguration:
    """Distinct targets in ℂ_{1/2} with verified preimage groups.

    Half-plane preimages are arrays of shape (P,); polydisc preimages have
    shape (P, d) and belong to the frequencies ``q``.
    """

    targets: np.ndarray
    preimages: tuple[np.ndarray, ...]
    variant: Variant
    q: tuple[int, ...] = ()
    residual: float = 0.0
    params: dict[str, float] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.targets)

    @property
    def preimage_count(self) -> int:
        return sum(len(group) for group in self.preimages)

    def weights(self, j: int) -> np.ndarray:
        """‖K_z‖^{-2} over group j."""
        group = self.preimages[j]
        if self.variant == "half-plane":
            return 1.0 / halfplane_norm_sq(group)
        return 1.0 / polydisc_norm_sq(group)

    def normalized_weights(self, j: int) -> np.ndarray:
        w = self.weights(j)
        return w / w.sum()


def make_configuration(
    targets: np.ndarray,
    preimages: list[np.ndarray],
    variant: Variant,
    mapping: PointMap,
    q: tuple[int, ...] = (),
    params: dict[str, float] | None = None,
) -> PointConfiguration:
    """Check the mapping property and distinctness, then freeze."""
    targets = np.asarray(targets, dtype=complex)
    if len(targets) == 0:
        raise LabError(VALIDATION_ERROR, 422, "configuration needs at least one target")
    if len(preimages) != len(targets):
        raise LabError(VALIDATION_ERROR, 422, f"{len(preimages)} preimage groups for {len(targets)} targets")
    if np.any(targets.real <= 0.5):
        raise precondition("targets must lie in Re s > 1/2")
    gaps = np.abs(targets[:, None] - targets[None, :])
    np.fill_diagonal(gaps, np.inf)
    if np.min(gaps) == 0.0:
        raise LabError(VALIDATION_ERROR, 422, "targets are not pairwise distinct")

    groups: list[np.ndarray] = []
    worst = 0.0
    for j, group in enumerate(preimages):
        group = np.asarray(group, dtype=complex)
        if len(group) == 0:
            raise LabError(VALIDATION_ERROR, 422, f"target {j} has no preimages")
        if variant == "half-plane":
            if np.any(group.real <= 0.5):
                raise precondition(f"preimages of target {j} leave Re s > 1/2")
        else:
            if group.ndim != 2 or group.shape[1] != len(q):
                raise LabError(VALIDATION_ERROR, 422, f"preimages of target {j} must have shape (P, {len(q)})")
            if np.any(np.abs(group) >= 1.0):
                raise precondition(f"preimages of target {j} leave the open polydisc")
        images = mapping.evaluate_many(group)
        err = float(np.max(np.abs(images - targets[j]))) / max(1.0, abs(targets[j]))
        if not err <= RESIDUAL_TOLERANCE:
            raise LabError(
                VALIDATION_ERROR,
                422,
                f"preimages of target {j} miss it by {err:.3g} (tolerance {RESIDUAL_TOLERANCE:g})",
            )
        worst = max(worst, err)
        groups.append(group)

    return PointConfiguration(
        targets=targets,
        preimages=tuple(groups),
        variant=variant,
        q=tuple(q),
        residual=worst,
        params=dict(params or {}),
    )


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------


def target_gram(config: PointConfiguration) -> np.ndarray:
    """A[j, k] = ⟨K_{s_k}, K_{s_j}⟩ = ζ(s_j + s̄_k)."""
    A = halfplane_gram(config.targets, config.targets)
    np.fill_diagonal(A, halfplane_norm_sq(config.targets))
    return A


def preimage_gram(config: PointConfiguration) -> np.ndarray:
    """B[j, k] = ⟨g_k, g_j⟩ built one block pair at a time."""
    gram = halfplane_gram if config.variant == "half-plane" else polydisc_gram
    if all(len(group) == 1 for group in config.preimages):
        points = np.concatenate(config.preimages)
        return gram(points, points)
    weights = [config.normalized_weights(j) for j in range(config.n)]
    B = np.empty((config.n, config.n), dtype=complex)
    for j in range(config.n):
        for k in range(j, config.n):
            block = gram(config.preimages[j], config.preimages[k])
            B[j, k] = weights[j] @ block @ weights[k]
            B[k, j] = np.conj(B[j, k])
        B[j, j] = B[j, j].real
    return B


# ---------------------------------------------------------------------------
# Lower bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LowerBound:
    value: float
    jitter: float
    condition: float


def bernstein_lower_bound(config: PointConfiguration, condition_floor: float | None = None) -> LowerBound:
    """sqrt of the smallest generalized eigenvalue of (A, B); a lower bound for a_n(C_φ)."""
    if condition_floor is None:
        condition_floor = get_settings().gram_condition_floor
    A = target_gram(config)
    B = preimage_gram(config)

    b_eigs = scipy.linalg.eigvalsh(B)
    lo, hi = float(b_eigs[0]), float(b_eigs[-1])
    condition = hi / lo if lo > 0 else float("inf")
    if not lo > condition_floor * hi:
        raise LabError(
            DEGENERATE_SYSTEM,
            422,
            f"preimage system numerically degenerate (condition estimate {condition:.3g})",
        )

    jitter = 0.0
    try:
        lam = scipy.linalg.eigh(A, B, eigvals_only=True)
    except np.linalg.LinAlgError:
        jitter = JITTER_FACTOR * float(np.max(np.real(np.diag(B))))
        logger.warning("pencil factorization failed; retrying with diagonal jitter %.3g", jitter)
        lam = scipy.linalg.eigh(A, B + jitter * np.eye(config.n), eigvals_only=True)

    value = float(np.sqrt(max(float(lam[0]), 0.0)))
    logger.info("pencil bound %.6g over %d targets (cond(B) %.3g)", value, config.n, condition)
    return LowerBound(value=value, jitter=jitter, condition=condition)


def config_to_dict(config: PointConfiguration) -> dict:
    """JSON-ready form with [re, im] points."""

    def pair(z: complex) -> list[float]:
        return [float(z.real), float(z.imag)]

    if config.variant == "half-plane":
        groups = [[pair(z) for z in group] for group in config.preimages]
    else:
        groups = [[[pair(z) for z in point] for point in group] for group in config.preimages]
    return {
        "variant": config.variant,
        "q": list(config.q),
        "targets": [pair(s) for s in config.targets],
        "preimages": groups,
        "weights": [config.weights(j).tolist() for j in range(config.n)],
        "residual": config.residual,
        "params": dict(config.params),
    }
