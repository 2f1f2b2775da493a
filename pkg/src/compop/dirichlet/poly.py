"""Truncated Dirichlet polynomials: storage, convolution, exponential, evaluation.

A polynomial is a finite map from positive integer frequencies (Python ints,
so arbitrarily large) to complex coefficients. ``cutoff`` is the largest
frequency the polynomial may hold, or ``BY_WEIGHT`` when truncation is done by
coefficient size instead.
"""

import cmath
import heapq
import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from compop.errors import LabError, MATRIX_TOO_LARGE, SPEC_PARSE_ERROR, VALIDATION_ERROR

logger = logging.getLogger(__name__)

BY_WEIGHT = None

# Coefficients below this are never stored (denormal guard)
DENORMAL_FLOOR = 1e-300

EXP_TAIL_TOLERANCE = 1e-14

_MAX_EXP_TERMS = 2_000_000


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


def as_point(z: complex | float | int) -> complex:
    """Return ``z`` as a finite complex number or raise."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise LabError(VALIDATION_ERROR, 422, f"point must be finite, got {z!r}")
    return w


# ---------------------------------------------------------------------------
# DirichletPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirichletPoly:
    """Immutable Dirichlet polynomial Σ c_n n^{-s}."""

    terms: Mapping[int, complex]
    cutoff: int | None = BY_WEIGHT

    def __post_init__(self) -> None:
        if self.cutoff is not BY_WEIGHT:
            if isinstance(self.cutoff, bool) or not isinstance(self.cutoff, int):
                raise LabError(VALIDATION_ERROR, 422, "cutoff must be an integer")
            if self.cutoff < 1:
                raise LabError(VALIDATION_ERROR, 422, f"cutoff must be >= 1, got {self.cutoff}")
        cleaned: dict[int, complex] = {}
        for n, c in self.terms.items():
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise LabError(VALIDATION_ERROR, 422, f"frequency must be a positive int, got {n!r}")
            value = complex(c)
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise LabError(VALIDATION_ERROR, 422, f"coefficient at {n} is not finite")
            if abs(value) < DENORMAL_FLOOR:
                continue
            if self.cutoff is not BY_WEIGHT and n > self.cutoff:
                continue
            cleaned[n] = value
        object.__setattr__(self, "terms", cleaned)

    # -- accessors ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> complex:
        return self.terms.get(n, 0j)

    def items(self) -> list[tuple[int, complex]]:
        """Terms in ascending frequency order."""
        return sorted(self.terms.items())

    @property
    def support(self) -> list[int]:
        return sorted(self.terms)

    @property
    def constant(self) -> complex:
        return self.terms.get(1, 0j)

    @property
    def norm1(self) -> float:
        return math.fsum(abs(c) for c in self.terms.values())

    @property
    def norm2(self) -> float:
        """ℋ² norm: the ℓ² norm of the coefficients."""
        return math.sqrt(math.fsum(abs(c) ** 2 for c in self.terms.values()))

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0.0 for c in self.terms.values())

    # -- derived polynomials ------------------------------------------------

    def without_constant(self) -> "DirichletPoly":
        return DirichletPoly({n: c for n, c in self.terms.items() if n != 1}, self.cutoff)

    def scaled(self, factor: complex) -> "DirichletPoly":
        return DirichletPoly({n: factor * c for n, c in self.terms.items()}, self.cutoff)

    def dilated(self, k: int) -> "DirichletPoly":
        """Multiply every frequency by ``k`` (f(s) ↦ k^{-s} f(s)); cutoff becomes by-weight."""
        if k == 1:
            return self
        return DirichletPoly({n * k: c for n, c in self.terms.items()}, BY_WEIGHT)

    @classmethod
    def constant_poly(cls, c: complex, cutoff: int | None = BY_WEIGHT) -> "DirichletPoly":
        return cls({1: c}, cutoff)


def poly(terms: Mapping[int, complex] | Iterable[tuple[int, complex]], cutoff: int | None = BY_WEIGHT) -> DirichletPoly:
    """Build a DirichletPoly, summing repeated frequencies."""
    pairs = terms.items() if isinstance(terms, Mapping) else terms
    acc: dict[int, complex] = {}
    for n, c in pairs:
        acc[n] = acc.get(n, 0j) + complex(c)
    return DirichletPoly(acc, cutoff)


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------


def convolve(a: DirichletPoly, b: DirichletPoly, cutoff: int) -> DirichletPoly:
    """Dirichlet product a·b, keeping frequencies ≤ cutoff."""
    if isinstance(cutoff, bool) or not isinstance(cutoff, int) or cutoff < 1:
        raise LabError(VALIDATION_ERROR, 422, f"cutoff must be an integer >= 1, got {cutoff!r}")
    out: dict[int, complex] = {}
    b_items = b.items()
    for d, x in a.items():
        if d > cutoff:
            break
        limit = cutoff // d
        for e, y in b_items:
            if e > limit:
                break
            n = d * e
            out[n] = out.get(n, 0j) + x * y
    return DirichletPoly(out, cutoff)


def exp_order(norm1: float, order: int = 0) -> int:
    """Smallest order ≥ ``order`` with norm1^{k+1}/(k+1)! ≤ EXP_TAIL_TOLERANCE."""
    if norm1 == 0.0:
        return order
    log_x = math.log(norm1)
    log_tol = math.log(EXP_TAIL_TOLERANCE)
    k = order
    while (k + 1) * log_x - math.lgamma(k + 2) > log_tol:
        k += 1
    return k


def exp_truncated(
    a: DirichletPoly,
    cutoff: int | None,
    order: int = 0,
    *,
    drop_below: float = 0.0,
) -> DirichletPoly:
    """exp(a) = Σ_k a^{*k}/k! truncated at ``cutoff``.

    ``order`` is raised until the scalar tail bound |a|₁^{order+1}/(order+1)!
    drops below 1e-14. With ``cutoff=BY_WEIGHT`` the series is summed to
    convergence without a frequency cutoff and coefficients below
    ``drop_below`` are discarded (see ``exp_by_weight``).
    """
    if 1 in a.terms:
        raise LabError(VALIDATION_ERROR, 422, "constant term must be zero")
    if order < 0:
        raise LabError(VALIDATION_ERROR, 422, f"order must be >= 0, got {order}")
    if cutoff is BY_WEIGHT:
        return exp_by_weight(a, drop_below).poly

    order = exp_order(a.norm1, order)
    if a.terms:
        # a^{*k} lives on frequencies ≥ (min freq)^k
        order = min(order, int(math.log(cutoff) / math.log(min(a.terms))) + 1)

    result: dict[int, complex] = {1: 1 + 0j}
    power = DirichletPoly({1: 1 + 0j}, cutoff)
    for k in range(1, order + 1):
        power = convolve(power, a, cutoff).scaled(1.0 / k)
        if not power.terms:
            break
        for n, c in power.terms.items():
            result[n] = result.get(n, 0j) + c
    return DirichletPoly(result, cutoff)


@dataclass(frozen=True)
class ExpSeries:
    """exp(a) truncated by weight, with the squared mass that was discarded."""

    poly: DirichletPoly
    dropped_sq: float


def exp_by_weight(a: DirichletPoly, drop_below: float, max_terms: int = _MAX_EXP_TERMS) -> ExpSeries:
    """Weight-truncated exp(a) via the log-derivative recurrence.

    With f = exp(a): (log n) f_n = Σ_{e | n} (log e) a_e f_{n/e}. Frequencies
    are visited in ascending order from a heap. Successors of a coefficient
    below ``drop_below`` are only explored while the series can still grow,
    i.e. while Σ_e |a_e| log e ≥ log(n · min e).
    """
    if 1 in a.terms:
        raise LabError(VALIDATION_ERROR, 422, "constant term must be zero")
    if not drop_below > 0.0:
        raise LabError(VALIDATION_ERROR, 422, "by-weight exponential needs drop_below > 0")

    gens = [(e, c * math.log(e)) for e, c in a.items()]
    if not gens:
        return ExpSeries(DirichletPoly({1: 1 + 0j}), 0.0)
    growth = math.fsum(abs(w) for _, w in gens)
    e_min = gens[0][0]

    values: dict[int, complex] = {}
    kept: dict[int, complex] = {}
    dropped_sq = 0.0
    heap = [1]
    queued = {1}
    while heap:
        n = heapq.heappop(heap)
        if n == 1:
            value = 1 + 0j
        else:
            total = 0j
            for e, w in gens:
                if n % e == 0:
                    prev = values.get(n // e)
                    if prev is not None:
                        total += w * prev
            value = total / math.log(n)
        values[n] = value

        big = abs(value) >= drop_below
        if big:
            kept[n] = value
        else:
            dropped_sq += abs(value) ** 2
        if big or growth >= math.log(n * e_min):
            for e, _ in gens:
                m = n * e
                if m not in queued:
                    queued.add(m)
                    heapq.heappush(heap, m)
        if len(values) > max_terms:
            raise LabError(
                MATRIX_TOO_LARGE,
                413,
                f"exponential series exceeded {max_terms} terms; raise row_tolerance",
            )
    return ExpSeries(DirichletPoly(kept), dropped_sq)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(a: DirichletPoly, s: complex) -> complex:
    """Σ a(n)·n^{-s} over the stored terms."""
    s = as_point(s)
    return sum((c * cmath.exp(-s * math.log(n)) for n, c in a.items()), 0j)


def evaluate_many(a: DirichletPoly, s: np.ndarray) -> np.ndarray:
    """Vectorized ``evaluate`` over an array of points."""
    s = np.asarray(s, dtype=complex)
    if not a.terms:
        return np.zeros(s.shape, dtype=complex)
    freqs, coeffs = zip(*a.items())
    logs = np.array([math.log(n) for n in freqs])
    c = np.array(coeffs, dtype=complex)
    return np.exp(-s[..., None] * logs) @ c


def derivative_many(a: DirichletPoly, s: np.ndarray) -> np.ndarray:
    """d/ds of the polynomial: −Σ a(n) log n · n^{-s}."""
    s = np.asarray(s, dtype=complex)
    if not a.terms:
        return np.zeros(s.shape, dtype=complex)
    freqs, coeffs = zip(*a.items())
    logs = np.array([math.log(n) for n in freqs])
    c = np.array(coeffs, dtype=complex)
    return -(np.exp(-s[..., None] * logs) @ (c * logs))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def poly_to_json(a: DirichletPoly) -> list[list]:
    """``[[str(freq), re, im], …]`` sorted by frequency."""
    return [[str(n), c.real, c.imag] for n, c in a.items()]


def poly_from_json(rows: list, cutoff: int | None = BY_WEIGHT) -> DirichletPoly:
    """Inverse of ``poly_to_json``; frequencies may exceed 64 bits."""
    if not isinstance(rows, list):
        raise LabError(SPEC_PARSE_ERROR, 400, "polynomial must be a list of [freq, re, im] triples")
    terms: list[tuple[int, complex]] = []
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise LabError(SPEC_PARSE_ERROR, 400, f"term {i}: expected [freq, re, im]")
        freq, re, im = row
        try:
            n = int(freq)
            c = complex(float(re), float(im))
        except (TypeError, ValueError) as e:
            raise LabError(SPEC_PARSE_ERROR, 400, f"term {i}: {e}") from e
        if n < 1:
            raise LabError(SPEC_PARSE_ERROR, 400, f"term {i}: frequency must be >= 1")
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise LabError(SPEC_PARSE_ERROR, 400, f"term {i}: coefficient is not finite")
        terms.append((n, c))
    return poly(terms, cutoff)
