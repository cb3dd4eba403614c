"""Shared mathematical kernel: angles, RNG streams, dense linalg, vehicle models."""

from navsim.core.angles import angle_diff, normalize_angle
from navsim.core.linalg import cholesky, solve_dare, solve_spd, spectral_radius
from navsim.core.models import (
    GaussianBelief,
    Pose2D,
    RangeBearing,
    SensorNoise,
    VehicleState,
    motion_bicycle,
    motion_jacobian,
    motion_unicycle,
    observe_jacobian,
    observe_range_bearing,
)
from navsim.core.rng import RngStream, box_muller, gauss, next_u64, split_substream, uniform

__all__ = [
    "GaussianBelief",
    "Pose2D",
    "RangeBearing",
    "RngStream",
    "SensorNoise",
    "VehicleState",
    "angle_diff",
    "box_muller",
    "cholesky",
    "gauss",
    "motion_bicycle",
    "motion_jacobian",
    "motion_unicycle",
    "next_u64",
    "normalize_angle",
    "observe_jacobian",
    "observe_range_bearing",
    "solve_dare",
    "solve_spd",
    "spectral_radius",
    "split_substream",
    "uniform",
]
