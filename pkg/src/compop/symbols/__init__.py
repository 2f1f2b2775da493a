from compop.symbols.fixed_point import FixedPoint, fixed_point
from compop.symbols.symbol import (
    BohrLift,
    LinearSymbol,
    RestrictedRangeLift,
    Symbol,
    as_linear,
    auxiliary_symbol,
    bohr_lift,
    kappa,
    reduce_to_real,
    restricted_range_symbol,
)
from compop.symbols.validation import validate

__all__ = [
    "BohrLift",
    "FixedPoint",
    "LinearSymbol",
    "RestrictedRangeLift",
    "Symbol",
    "as_linear",
    "auxiliary_symbol",
    "bohr_lift",
    "fixed_point",
    "kappa",
    "reduce_to_real",
    "restricted_range_symbol",
    "validate",
]
