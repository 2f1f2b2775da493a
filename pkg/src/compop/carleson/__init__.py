from compop.carleson.blaschke import (
    UpperBoundEstimate,
    blaschke_eval,
    blaschke_upper_bound,
    compact_range_rate,
    upper_bound_parameters,
)
from compop.carleson.geometry import (
    CarlesonSquare,
    CrudeBound,
    FinitePointMeasure,
    Separation,
    box_norm,
    crude_delta_bound,
    interpolation_constant_bound,
    pseudo_distance,
    separation,
    shapiro_shields_bounds,
)
from compop.carleson.pullback import pullback_profile

__all__ = [
    "CarlesonSquare",
    "CrudeBound",
    "FinitePointMeasure",
    "Separation",
    "UpperBoundEstimate",
    "blaschke_eval",
    "blaschke_upper_bound",
    "box_norm",
    "compact_range_rate",
    "crude_delta_bound",
    "interpolation_constant_bound",
    "pseudo_distance",
    "pullback_profile",
    "separation",
    "shapiro_shields_bounds",
    "upper_bound_parameters",
]
