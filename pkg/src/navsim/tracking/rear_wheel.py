"""Rear-wheel feedback steering law for path following."""

import math

from navsim.errors import SingularGeometry


def _sinc(theta: float) -> float:
    return 1.0 if theta == 0.0 else math.sin(theta) / theta


def rear_wheel_feedback(
    v: float,
    e: float,
    theta_e: float,
    kappa: float,
    k_theta: float = 1.0,
    k_e: float = 0.5,
) -> float:
    """Yaw-rate command from the cross-track and heading errors.

    omega = v*kappa*cos(theta_e)/(1 - kappa*e)
            - k_theta*|v|*theta_e - k_e*v*sinc(theta_e)*e

    with e positive when left of the path. Raises SingularGeometry when the
    projection term 1 - kappa*e degenerates.
    """
    denom = 1.0 - kappa * e
    if abs(denom) <= 1e-6:
        raise SingularGeometry(f"1 - kappa*e = {denom:.2e} is singular")
    return (
        v * kappa * math.cos(theta_e) / denom
        - k_theta * abs(v) * theta_e
        - k_e * v * _sinc(theta_e) * e
    )
