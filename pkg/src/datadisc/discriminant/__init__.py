"""Computing the discriminant D_{X,J} by elimination or by interpolation."""

from .elimination import dxj_elimination
from .interpolation import (homogeneous_recovery, interpolate_strategy1,
                            interpolate_strategy2, interpolate_strategy3, linear_operator,
                            sampling_cost_estimate, transformed)
from .sampling import (degree_profile, degree_profile_s3, intersect, intersect_s3,
                       line_eliminant, s3_eliminant)
from .types import (CoordinateChange, DegenerateSampleError, DegreeProfile,
                    DiscriminantResult, InterpolationState, ShapeFailure, SupportMismatch)
from .verify import verify_on_random_line

__all__ = [
    "CoordinateChange", "DegenerateSampleError", "DegreeProfile", "DiscriminantResult",
    "InterpolationState", "ShapeFailure", "SupportMismatch", "degree_profile",
    "degree_profile_s3", "dxj_elimination", "homogeneous_recovery", "interpolate_strategy1",
    "interpolate_strategy2", "interpolate_strategy3", "intersect", "intersect_s3",
    "line_eliminant", "linear_operator", "s3_eliminant", "sampling_cost_estimate",
    "transformed", "verify_on_random_line",
]
