from compop.kernels.bounds import (
    LowerBound,
    PointConfiguration,
    bernstein_lower_bound,
    config_to_dict,
    make_configuration,
)
from compop.kernels.constructions import boundary_grid, horizontal_chain, restricted_range_chain
from compop.kernels.inner import HalfPlanePoint, KernelPoint, PolydiscPoint, kernel_inner

__all__ = [
    "HalfPlanePoint",
    "KernelPoint",
    "LowerBound",
    "PointConfiguration",
    "PolydiscPoint",
    "bernstein_lower_bound",
    "boundary_grid",
    "config_to_dict",
    "horizontal_chain",
    "kernel_inner",
    "make_configuration",
    "restricted_range_chain",
]
