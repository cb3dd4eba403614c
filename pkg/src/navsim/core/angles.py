"""Angle arithmetic on the half-open interval (-pi, pi]."""

import math

from navsim.errors import InvalidInput

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Wrap an angle to (-pi, pi].

    The result differs from ``theta`` by an exact integer multiple of 2*pi
    (to within float rounding of the subtraction, ~1e-16 * |theta|).
    Angles already in range are returned bit-identically, which makes the
    operation exactly idempotent.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise InvalidInput(f"angle must be finite, got {theta!r}")
    if -math.pi < theta <= math.pi:
        return theta
    # (pi - theta) % 2pi lies in [0, 2pi), so the result lies in (-pi, pi].
    return math.pi - (math.pi - theta) % TWO_PI


def angle_diff(a: float, b: float) -> float:
    """Shortest signed difference a - b, wrapped to (-pi, pi]."""
    return normalize_angle(a - b)
