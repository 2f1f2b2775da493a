"""Singular values, fits and truncation convergence for one symbol."""

import logging

import numpy as np

from compop.errors import LabError
from compop.models import DecayReport
from compop.operators.fitting import decay_fit
from compop.operators.matrix import assemble
from compop.operators.spectrum import approximation_numbers, eigenvalues
from compop.services.settings import get_settings
from compop.symbols.symbol import LinearSymbol, Symbol

logger = logging.getLogger(__name__)


def compression_report(
    sym: Symbol | LinearSymbol,
    N: int,
    count: int | None = None,
    window: tuple[int, int] | None = None,
    row_tolerance: float | None = None,
    eigen_count: int = 10,
) -> DecayReport:
    """Assemble at N and 2N; report a_n at N, their fits and relative change.

    The 2N pass is skipped (empty ``convergence``) when 2N exceeds the
    column cap.
    """
    settings = get_settings()
    if row_tolerance is None:
        row_tolerance = settings.row_tolerance
    count = N if count is None else count

    op = assemble(sym, N, row_tolerance)
    values = approximation_numbers(op, count)
    moduli = np.abs(eigenvalues(op, min(eigen_count, N)))

    convergence: list[float] = []
    if 2 * N <= settings.max_columns:
        finer = approximation_numbers(assemble(sym, 2 * N, row_tolerance), count)
        convergence = [
            float(abs(b - a) / b) if b > 0 else 0.0 for a, b in zip(values, finer)
        ]
    else:
        logger.warning("skipping the 2N = %d pass: column cap is %d", 2 * N, settings.max_columns)

    try:
        fits = decay_fit(values, window)
    except LabError as e:
        logger.warning("no decay fit: %s", e.detail)
        fits = None

    return DecayReport(
        n_columns=N,
        n_rows=len(op.rows),
        row_tolerance=row_tolerance,
        singular_values=values.tolist(),
        eigenvalue_moduli=moduli.tolist(),
        fits=fits,
        window=fits.window if fits is not None else window,
        convergence=convergence,
        column_deficit_max=float(op.column_deficits.max()),
    )
