"""Carleson squares, separation constants and interpolation-constant bounds in ℂ_{1/2}."""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from compop.dirichlet.poly import as_point
from compop.dirichlet.zeta import zeta_real
from compop.errors import INCONSISTENT_RESULT, LabError, VALIDATION_ERROR, precondition

FORM_TOLERANCE = 1e-12

# relative slack when comparing candidate side lengths with atom offsets
_EDGE_SLACK = 1e-12


def _as_points(points) -> np.ndarray:
    arr = np.atleast_1d(np.asarray([as_point(z) for z in np.atleast_1d(points)], dtype=complex))
    if np.any(arr.real <= 0.5):
        raise precondition("points must lie in Re s > 1/2")
    return arr


# ---------------------------------------------------------------------------
# Carleson squares
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CarlesonSquare:
    """Half-plane: {1/2 ≤ σ ≤ 1/2 + ell, |t − center| ≤ ell/2}.

    Disc: {re^{it} : r ≥ 1 − ell, |t − center| ≤ ell·π}.
    """

    domain: Literal["half-plane", "disc"]
    ell: float
    center: float = 0.0

    def __post_init__(self) -> None:
        if not self.ell > 0:
            raise LabError(VALIDATION_ERROR, 422, f"side length must be positive, got {self.ell}")
        if self.domain == "disc" and self.ell > 1:
            raise LabError(VALIDATION_ERROR, 422, "disc squares need ell <= 1")

    def contains(self, point: complex) -> bool:
        z = as_point(point)
        if self.domain == "half-plane":
            return 0.5 <= z.real <= 0.5 + self.ell and abs(z.imag - self.center) <= self.ell / 2
        r = abs(z)
        if not (1.0 - self.ell <= r <= 1.0):
            return False
        gap = abs((math.atan2(z.imag, z.real) - self.center + math.pi) % (2 * math.pi) - math.pi)
        return gap <= self.ell * math.pi


# ---------------------------------------------------------------------------
# Pseudo-hyperbolic distance and separation
# ---------------------------------------------------------------------------


def _rho_forms(s: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    denom = s + np.conj(w) - 1.0
    direct = np.abs((s - w) / denom)
    product = (2 * s.real - 1) * (2 * w.real - 1) / np.abs(denom) ** 2
    return direct, 1.0 - product


def pseudo_distance(s: complex, w: complex) -> float:
    """ϱ(s, w) = |(s − w)/(s + w̄ − 1)|, checked against its second closed form."""
    s_arr, w_arr = _as_points(s), _as_points(w)
    direct, other_sq = _rho_forms(s_arr, w_arr)
    if abs(direct[0] ** 2 - other_sq[0]) > FORM_TOLERANCE:
        raise LabError(
            INCONSISTENT_RESULT,
            500,
            f"pseudo-distance forms disagree: {direct[0] ** 2!r} vs {other_sq[0]!r}",
        )
    return float(direct[0])


def rho_matrix(points) -> np.ndarray:
    pts = _as_points(points)
    direct, _ = _rho_forms(pts[:, None], pts[None, :])
    return direct


@dataclass(frozen=True)
class Separation:
    eta: float
    delta: float


def separation(points) -> Separation:
    """η = inf_{j≠k} ϱ(s_j, s_k) and δ = inf_j Π_{k≠j} ϱ(s_j, s_k); (1, 1) for one point."""
    pts = _as_points(points)
    if len(pts) == 0:
        raise LabError(VALIDATION_ERROR, 422, "separation needs at least one point")
    if len(pts) == 1:
        return Separation(eta=1.0, delta=1.0)
    rho = rho_matrix(pts)
    np.fill_diagonal(rho, 1.0)
    if np.min(rho) == 0.0:
        raise LabError(VALIDATION_ERROR, 422, "duplicate points")
    log_products = np.log(rho).sum(axis=1)
    return Separation(eta=float(np.min(rho)), delta=float(np.exp(np.min(log_products))))


# ---------------------------------------------------------------------------
# Finite measures and the box ratio
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinitePointMeasure:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=complex).reshape(-1)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(points) != len(weights):
            raise LabError(VALIDATION_ERROR, 422, f"{len(points)} atoms but {len(weights)} weights")
        if np.any(weights <= 0):
            raise LabError(VALIDATION_ERROR, 422, "atom weights must be positive")
        if np.any(points.real <= 0.5):
            raise precondition("atoms must lie in Re s > 1/2")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def for_half_plane(cls, points) -> "FinitePointMeasure":
        """Weights ‖K^{H²(ℂ_{1/2})}_s‖^{-2} = 2 Re s − 1."""
        pts = _as_points(points)
        return cls(pts, 2 * pts.real - 1)

    @classmethod
    def for_hardy_dirichlet(cls, points) -> "FinitePointMeasure":
        """Weights ‖K_s‖^{-2} = 1/ζ(2 Re s)."""
        pts = _as_points(points)
        return cls(pts, np.array([1.0 / zeta_real(2 * s.real) for s in pts]))

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())


def box_norm(mu: FinitePointMeasure) -> float:
    """sup_Q μ(Q)/ℓ(Q) over Carleson squares, exact for finite measures.

    The sup is attained at a side length in {σ_j − 1/2} ∪ {|t_j − t_k|} with
    a t-window whose lower edge sits on an atom.
    """
    if len(mu.points) == 0:
        return 0.0
    sigma = mu.points.real - 0.5
    t = mu.points.imag
    diffs = np.abs(t[:, None] - t[None, :])
    candidates = np.unique(np.concatenate([sigma, diffs[diffs > 0]]))

    best = 0.0
    for ell in candidates:
        reach = ell * (1 + _EDGE_SLACK)
        eligible = sigma <= reach
        if not eligible.any():
            continue
        order = np.argsort(t[eligible], kind="stable")
        ts = t[eligible][order]
        cumulative = np.concatenate([[0.0], np.cumsum(mu.weights[eligible][order])])
        upper = np.searchsorted(ts, ts + reach, side="right")
        mass = float(np.max(cumulative[upper] - cumulative[np.arange(len(ts))]))
        best = max(best, mass / ell)
    return best


# ---------------------------------------------------------------------------
# Interpolation-constant bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrudeBound:
    """Computable upper bounds for 1/δ(S).

    ``display`` is sup_k exp[(1/2 + log 1/η)·Σ_{j≠k} t_jk] with
    t_jk = (2σ_j − 1)(2σ_k − 1)/|s_j + s̄_k − 1|². ``proxy`` replaces the
    Carleson norm in exp[2π(1 + 2 log 1/η)·‖μ_S‖] by the box ratio, so it
    lacks the embedding constant.
    """

    display: float
    proxy: float
    eta: float
    delta: float
    box_ratio: float


def crude_delta_bound(points) -> CrudeBound:
    """Both bounds of :class:`CrudeBound` for a finite point set.

    The exponent of ``display`` is (1/2 + log 1/η) times the column sum.
    Reading it as 1/2 + (log 1/η)·Σ t instead also bounds 1/δ, but the
    result is weaker whenever the largest column sum is below 1.
    """
    pts = _as_points(points)
    sep = separation(pts)
    box = box_norm(FinitePointMeasure.for_half_plane(pts))
    if len(pts) == 1:
        return CrudeBound(display=1.0, proxy=1.0, eta=1.0, delta=1.0, box_ratio=box)
    log_inv_eta = -math.log(sep.eta)
    _, one_minus_t = _rho_forms(pts[:, None], pts[None, :])
    t = 1.0 - one_minus_t
    np.fill_diagonal(t, 0.0)
    exponent = (0.5 + log_inv_eta) * float(np.max(t.sum(axis=0)))
    proxy_exponent = 2 * math.pi * (1 + 2 * log_inv_eta) * box
    return CrudeBound(
        display=math.exp(exponent),
        proxy=math.exp(proxy_exponent),
        eta=sep.eta,
        delta=sep.delta,
        box_ratio=box,
    )


def shapiro_shields_bounds(points) -> tuple[float, float]:
    """(1/δ, box_ratio^{1/2}/δ); the upper value omits the absolute embedding constant."""
    pts = _as_points(points)
    sep = separation(pts)
    box = box_norm(FinitePointMeasure.for_half_plane(pts))
    return 1.0 / sep.delta, math.sqrt(box) / sep.delta


def interpolation_constant_bound(M: float, theta: float, R: float, C: float) -> float:
    """C·M^{2θ+6}·R^{2θ+7/2} for the interpolation constant of a shifted sequence."""
    if not R >= theta + 1:
        raise precondition(f"need R >= theta + 1, got R = {R}, theta = {theta}")
    if not M >= 1:
        raise precondition(f"need M >= 1, got {M}")
    if not C > 0:
        raise precondition(f"need C > 0, got {C}")
    return C * M ** (2 * theta + 6) * R ** (2 * theta + 3.5)
