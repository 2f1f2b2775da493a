"""Truncated matrix of C_φ in the basis e_n(s) = n^{-s}.

Column m holds the coefficients of m^{-φ(s)} = m^{-c1}·exp(−log m·(ψ(s) − c1))·(m^{c0})^{-s}.
Rows are the union of the column supports, in ascending frequency order.
"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from compop.dirichlet.poly import DirichletPoly, exp_by_weight
from compop.errors import LabError, MATRIX_TOO_LARGE, UNBOUNDED_SYMBOL, VALIDATION_ERROR
from compop.services.settings import get_settings
from compop.symbols.symbol import LinearSymbol, Symbol
from compop.symbols.validation import validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedOperator:
    """Compression of C_φ onto columns 1..N and a finite row set."""

    n_columns: int
    rows: tuple[int, ...]
    entries: np.ndarray
    row_tolerance: float
    column_deficits: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def entry(self, n: int, m: int) -> complex:
        """Coefficient of n^{-s} in m^{-φ(s)} (0 when the row was not retained)."""
        try:
            i = self.rows.index(n)
        except ValueError:
            return 0j
        return complex(self.entries[i, m - 1])

    def column_norms_sq(self) -> np.ndarray:
        return np.sum(np.abs(self.entries) ** 2, axis=0)


def as_symbol(sym: Symbol | LinearSymbol) -> Symbol:
    return sym.to_symbol() if isinstance(sym, LinearSymbol) else sym


def ensure_not_unbounded(sym: Symbol) -> None:
    verdict = validate(sym)
    if verdict.verdict == "unbounded":
        raise LabError(UNBOUNDED_SYMBOL, 422, f"C_phi is unbounded: {verdict.reason}")
    if verdict.verdict == "undecidable":
        logger.warning("assembling a symbol with undecided boundedness: %s", verdict.reason)


def column_with_deficit(sym: Symbol, m: int, row_tolerance: float) -> tuple[DirichletPoly, float]:
    """Column m and its relative squared truncation deficit."""
    if m == 1:
        return DirichletPoly({1: 1 + 0j}), 0.0
    log_m = math.log(m)
    scale = cmath.exp(-sym.c1 * log_m)
    series = exp_by_weight(sym.psi.without_constant().scaled(-log_m), drop_below=row_tolerance)

    shift = m**sym.c0
    coeffs = {n * shift: scale * c for n, c in series.poly.terms.items()}
    norm_sq = math.fsum(abs(c) ** 2 for c in coeffs.values())
    threshold = row_tolerance * math.sqrt(norm_sq)
    kept = {n: c for n, c in coeffs.items() if abs(c) >= threshold}
    kept_sq = math.fsum(abs(c) ** 2 for c in kept.values())
    dropped_sq = (norm_sq - kept_sq) + abs(scale) ** 2 * series.dropped_sq
    deficit = dropped_sq / norm_sq if norm_sq > 0 else 0.0
    return DirichletPoly(kept), deficit


def column(sym: Symbol | LinearSymbol, m: int, row_tolerance: float | None = None) -> DirichletPoly:
    """Dirichlet coefficients of m^{-φ}, rows below row_tolerance × column norm dropped."""
    if m < 1:
        raise LabError(VALIDATION_ERROR, 422, f"column index must be >= 1, got {m}")
    sym = as_symbol(sym)
    ensure_not_unbounded(sym)
    if row_tolerance is None:
        row_tolerance = get_settings().row_tolerance
    return column_with_deficit(sym, m, row_tolerance)[0]


def assemble(
    sym: Symbol | LinearSymbol,
    N: int,
    row_tolerance: float | None = None,
    workers: int | None = None,
) -> TruncatedOperator:
    """Dense compression of C_φ onto columns m ≤ N."""
    settings = get_settings()
    if N < 1:
        raise LabError(VALIDATION_ERROR, 422, f"N must be >= 1, got {N}")
    if N > settings.max_columns:
        raise LabError(
            MATRIX_TOO_LARGE,
            413,
            f"N = {N} columns exceeds the cap of {settings.max_columns}",
        )
    if row_tolerance is None:
        row_tolerance = settings.row_tolerance
    if workers is None:
        workers = settings.workers
    sym = as_symbol(sym)
    ensure_not_unbounded(sym)

    build = partial(column_with_deficit, sym, row_tolerance=row_tolerance)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(build, range(1, N + 1)))
    else:
        columns = [build(m) for m in range(1, N + 1)]

    row_set: set[int] = set()
    for col, _ in columns:
        row_set.update(col.terms)
    rows = tuple(sorted(row_set))
    if len(rows) > settings.max_rows:
        raise LabError(
            MATRIX_TOO_LARGE,
            413,
            f"{len(rows)} rows x {N} columns exceeds the cap of "
            f"{settings.max_rows} rows; raise row_tolerance",
        )

    index = {n: i for i, n in enumerate(rows)}
    real = all(col.is_real for col, _ in columns)
    entries = np.zeros((len(rows), N), dtype=np.float64 if real else np.complex128)
    for j, (col, _) in enumerate(columns):
        idx = [index[n] for n in col.terms]
        values = list(col.terms.values())
        entries[idx, j] = np.real(values) if real else values
    deficits = np.array([deficit for _, deficit in columns])

    logger.info(
        "assembled %d x %d compression (row_tolerance %.1e, max deficit %.2e)",
        len(rows),
        N,
        row_tolerance,
        float(deficits.max()),
    )
    return TruncatedOperator(
        n_columns=N,
        rows=rows,
        entries=entries,
        row_tolerance=row_tolerance,
        column_deficits=deficits,
    )


def square_compression(op: TruncatedOperator) -> np.ndarray:
    """N×N matrix keeping only rows with frequency ≤ N."""
    N = op.n_columns
    square = np.zeros((N, N), dtype=op.entries.dtype)
    for i, n in enumerate(op.rows):
        if n > N:
            break
        square[n - 1] = op.entries[i]
    return square
