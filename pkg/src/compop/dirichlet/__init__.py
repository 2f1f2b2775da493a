from compop.dirichlet.poly import (
    BY_WEIGHT,
    DirichletPoly,
    as_point,
    convolve,
    evaluate,
    exp_truncated,
    poly,
    poly_from_json,
    poly_to_json,
)
from compop.dirichlet.zeta import zeta_real

__all__ = [
    "BY_WEIGHT",
    "DirichletPoly",
    "as_point",
    "convolve",
    "evaluate",
    "exp_truncated",
    "poly",
    "poly_from_json",
    "poly_to_json",
    "zeta_real",
]
