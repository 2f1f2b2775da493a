from compop.operators.fitting import decay_fit, default_window
from compop.operators.matrix import TruncatedOperator, assemble, column, square_compression
from compop.operators.report import compression_report
from compop.operators.spectrum import (
    approximation_numbers,
    eigenvalues,
    hs_norm_sq,
    power_lower_bounds,
    schatten_partial_sums,
    weyl_check,
    weyl_lower_bounds,
)

__all__ = [
    "TruncatedOperator",
    "approximation_numbers",
    "assemble",
    "column",
    "compression_report",
    "decay_fit",
    "default_window",
    "eigenvalues",
    "hs_norm_sq",
    "power_lower_bounds",
    "schatten_partial_sums",
    "square_compression",
    "weyl_check",
    "weyl_lower_bounds",
]
