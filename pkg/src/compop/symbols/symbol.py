"""Symbols φ(s) = c₀s + ψ(s), linear symbols and their Bohr lifts."""

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from compop.dirichlet.poly import (
    DirichletPoly,
    as_point,
    derivative_many,
    evaluate,
    evaluate_many,
    poly,
)
from compop.errors import LabError, VALIDATION_ERROR
from compop.services.settings import get_settings


# ---------------------------------------------------------------------------
# General symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    """φ(s) = c0·s + ψ(s) with ψ a Dirichlet polynomial."""

    c0: int
    psi: DirichletPoly

    def __post_init__(self) -> None:
        if isinstance(self.c0, bool) or not isinstance(self.c0, int) or self.c0 < 0:
            raise LabError(VALIDATION_ERROR, 422, f"c0 must be a nonnegative integer, got {self.c0!r}")

    @property
    def c1(self) -> complex:
        return self.psi.constant

    def __call__(self, s: complex) -> complex:
        s = as_point(s)
        return self.c0 * s + evaluate(self.psi, s)

    def evaluate_many(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=complex)
        return self.c0 * s + evaluate_many(self.psi, s)

    def derivative(self, s: complex) -> complex:
        """φ′(s) = c0 − Σ c_n log n · n^{-s}."""
        return self.c0 + complex(derivative_many(self.psi, np.asarray(as_point(s))))

    def coefficient_sum(self, sigma: float = 0.0, *, skip_constant: bool = False) -> float:
        """Σ |c_n| n^{-σ}, an upper bound for |ψ| on Re s ≥ σ."""
        return math.fsum(
            abs(c) * math.exp(-sigma * math.log(n))
            for n, c in self.psi.terms.items()
            if not (skip_constant and n == 1)
        )


# ---------------------------------------------------------------------------
# Independence of frequencies
# ---------------------------------------------------------------------------


@lru_cache(maxsize=256)
def find_collision(qs: tuple[int, ...], bound: int) -> tuple[int, tuple, tuple] | None:
    """First integer ≤ bound with two representations q^α, or None."""
    reps: dict[int, tuple[int, ...]] = {1: ()}
    for q in qs:
        nxt: dict[int, tuple[int, ...]] = {}
        for value, alpha in reps.items():
            k = 0
            v = value
            while v <= bound:
                rep = alpha + (k,)
                if v in nxt:
                    return v, nxt[v], rep
                nxt[v] = rep
                v *= q
                k += 1
        reps = nxt
    return None


# ---------------------------------------------------------------------------
# Linear symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSymbol:
    """φ(s) = c1 + Σ_j c_{q_j} q_j^{-s} with independent q_j ≥ 2."""

    c1: complex
    terms: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self) -> None:
        c1 = as_point(self.c1)
        terms: list[tuple[int, complex]] = []
        for q, c in self.terms:
            if isinstance(q, bool) or not isinstance(q, int) or q < 2:
                raise LabError(VALIDATION_ERROR, 422, f"frequency must be an integer >= 2, got {q!r}")
            c = as_point(c)
            if c == 0:
                raise LabError(VALIDATION_ERROR, 422, f"coefficient at q = {q} must be nonzero")
            terms.append((q, c))
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "terms", tuple(terms))

        bound = get_settings().independence_bound
        collision = find_collision(self.frequencies, bound)
        if collision is not None:
            value, first, second = collision
            raise LabError(
                VALIDATION_ERROR,
                422,
                f"frequencies {list(self.frequencies)} are not independent: "
                f"{value} = q^{list(first)} = q^{list(second)}",
            )

    @property
    def d(self) -> int:
        return len(self.terms)

    @property
    def frequencies(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.terms)

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return tuple(c for _, c in self.terms)

    def to_symbol(self) -> Symbol:
        return Symbol(0, poly([(1, self.c1), *self.terms]))

    def __call__(self, s: complex) -> complex:
        s = as_point(s)
        return self.c1 + sum((c * cmath.exp(-s * math.log(q)) for q, c in self.terms), 0j)


def kappa(sym: LinearSymbol) -> float:
    """κ(φ) = Re c1 − Σ |c_{q_j}|."""
    return sym.c1.real - math.fsum(abs(c) for c in sym.coefficients)


def reduce_to_real(sym: LinearSymbol) -> LinearSymbol:
    """c1 ↦ Re c1, c_q ↦ −|c_q|; unitarily equivalent operator."""
    return LinearSymbol(complex(sym.c1.real), tuple((q, complex(-abs(c))) for q, c in sym.terms))


def as_linear(sym: Symbol) -> LinearSymbol | None:
    """The LinearSymbol form of ``sym`` when c0 = 0 and ψ's frequencies are independent."""
    if sym.c0 != 0:
        return None
    terms = tuple((n, c) for n, c in sym.psi.items() if n != 1)
    try:
        return LinearSymbol(sym.c1, terms)
    except LabError:
        return None


# ---------------------------------------------------------------------------
# Bohr lift
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BohrLift:
    """Φ(z) = c1 + Σ_j c_j z_j on the polydisc 𝔻^d."""

    c1: complex
    coefficients: tuple[complex, ...]
    frequencies: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.coefficients)

    @property
    def radius(self) -> float:
        """Φ maps the closed polydisc onto the closed disc of this radius about c1."""
        return math.fsum(abs(c) for c in self.coefficients)

    def __call__(self, z: Sequence[complex]) -> complex:
        if len(z) != self.d:
            raise LabError(VALIDATION_ERROR, 422, f"expected {self.d} coordinates, got {len(z)}")
        return self.c1 + sum((c * complex(w) for c, w in zip(self.coefficients, z)), 0j)

    def evaluate_many(self, z: np.ndarray) -> np.ndarray:
        """Φ over an array of shape (..., d)."""
        z = np.asarray(z, dtype=complex)
        if self.d == 0:
            return np.full(z.shape[:-1], self.c1, dtype=complex)
        return self.c1 + z @ np.array(self.coefficients, dtype=complex)


def bohr_lift(sym: LinearSymbol) -> BohrLift:
    return BohrLift(sym.c1, sym.coefficients, sym.frequencies)


# ---------------------------------------------------------------------------
# Special symbols
# ---------------------------------------------------------------------------


def auxiliary_symbol(xi: complex, gamma: complex) -> LinearSymbol:
    """χ(s) = c1 + c2·2^{-s} with χ(γ) = ξ, χ′(γ) ≠ 0 and χ(ℂ₀) ⊂ ℂ_{1/2}."""
    xi = as_point(xi)
    gamma = as_point(gamma)
    if xi.real <= 0.5:
        raise LabError(VALIDATION_ERROR, 422, "xi must lie in Re s > 1/2")
    eps = (xi.real - 0.5) / (1.0 + 2.0**gamma.real)
    c1 = xi - eps
    c2 = eps * cmath.exp(gamma * math.log(2.0))
    return LinearSymbol(c1, ((2, c2),))


@dataclass(frozen=True)
class RestrictedRangeLift:
    """Φ(z) = c1 + (1+z)/(1−z) on the unit disc (frequency 2)."""

    c1: complex

    d = 1
    frequencies = (2,)

    def __call__(self, z: Sequence[complex]) -> complex:
        w = complex(z[0])
        return self.c1 + (1 + w) / (1 - w)

    def evaluate_many(self, z: np.ndarray) -> np.ndarray:
        w = np.asarray(z, dtype=complex)[..., 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.c1 + (1 + w) / (1 - w)


def restricted_range_symbol(c1: complex, terms: int) -> Symbol:
    """c1 + (1 + 2^{-s})/(1 − 2^{-s}) truncated after 2^{-terms·s}."""
    c1 = as_point(c1)
    if c1.real <= 0.5:
        raise LabError(VALIDATION_ERROR, 422, "restricted range needs Re c1 > 1/2")
    if terms < 1:
        raise LabError(VALIDATION_ERROR, 422, "terms must be >= 1")
    return Symbol(0, poly([(1, c1 + 1), *((2**k, 2.0) for k in range(1, terms + 1))]))
