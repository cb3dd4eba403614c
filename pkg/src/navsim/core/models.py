"""Planar vehicle types, motion models with analytic Jacobians, and the range-bearing sensor.

Conventions: yaw in radians wrapped to (-pi, pi], world frame x-east/y-north,
forward-Euler integration everywhere.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.errors import InvalidInput, SingularObservation


@dataclass(frozen=True)
class Pose2D:
    """Planar position and heading; yaw is wrapped on construction."""

    x: float = 0.0
    y: float = 0.0
    yaw: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInput(f"pose coordinates must be finite: ({self.x}, {self.y})")
        object.__setattr__(self, "yaw", normalize_angle(self.yaw))


@dataclass(frozen=True)
class VehicleState:
    """Pose plus longitudinal speed."""

    pose: Pose2D = field(default_factory=Pose2D)
    v: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.v):
            raise InvalidInput(f"speed must be finite, got {self.v}")

    def as_vector(self) -> np.ndarray:
        """State as (x, y, yaw, v)."""
        return np.array([self.pose.x, self.pose.y, self.pose.yaw, self.v])


@dataclass(frozen=True)
class RangeBearing:
    """One range-bearing measurement, optionally tagged with a landmark id."""

    range: float
    bearing: float
    landmark_id: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.range) and self.range > 0):
            raise InvalidInput(f"range must be positive, got {self.range}")
        object.__setattr__(self, "bearing", normalize_angle(self.bearing))


@dataclass(frozen=True)
class GaussianBelief:
    """Mean vector and covariance for the Kalman-family filters.

    The covariance must be symmetric to within 1e-9 and have min eigenvalue
    >= -1e-9; both are checked on construction. Arrays are copied and frozen.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        if mean.ndim != 1:
            raise InvalidInput(f"mean must be a vector, got shape {mean.shape}")
        n = mean.shape[0]
        if cov.shape != (n, n):
            raise InvalidInput(f"cov shape {cov.shape} does not match mean length {n}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise InvalidInput("belief contains non-finite values")
        if n and np.max(np.abs(cov - cov.T)) > 1e-9:
            raise InvalidInput("covariance is not symmetric within 1e-9")
        if n and np.min(np.linalg.eigvalsh(cov)) < -1e-9:
            raise InvalidInput("covariance has eigenvalue below -1e-9")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


@dataclass(frozen=True)
class SensorNoise:
    """Standard deviations for the simulated sensors.

    Defaults are sized so the filters visibly beat dead reckoning at desk
    scale: odometry (0.1 m/s, 0.05 rad/s), GNSS 0.5 m, range 0.2 m,
    bearing 0.03 rad.
    """

    v_std: float = 0.1
    omega_std: float = 0.05
    gnss_std: float = 0.5
    range_std: float = 0.2
    bearing_std: float = 0.03


def motion_unicycle(state: VehicleState, v: float, omega: float, dt: float) -> VehicleState:
    """One forward-Euler step of the unicycle model; stored speed becomes ``v``."""
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidInput(f"dt must be positive, got {dt}")
    p = state.pose
    return VehicleState(
        Pose2D(
            p.x + v * math.cos(p.yaw) * dt,
            p.y + v * math.sin(p.yaw) * dt,
            normalize_angle(p.yaw + omega * dt),
        ),
        v,
    )


def motion_bicycle(
    state: VehicleState, accel: float, steer: float, wheelbase: float, dt: float
) -> VehicleState:
    """One forward-Euler step of the kinematic bicycle model."""
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidInput(f"dt must be positive, got {dt}")
    if not (math.isfinite(wheelbase) and wheelbase > 0):
        raise InvalidInput(f"wheelbase must be positive, got {wheelbase}")
    if not (math.isfinite(steer) and abs(steer) <= math.pi / 2 - 1e-6):
        raise InvalidInput(f"|steer| must be <= pi/2 - 1e-6, got {steer}")
    p, v = state.pose, state.v
    return VehicleState(
        Pose2D(
            p.x + v * math.cos(p.yaw) * dt,
            p.y + v * math.sin(p.yaw) * dt,
            normalize_angle(p.yaw + v * math.tan(steer) / wheelbase * dt),
        ),
        v + accel * dt,
    )


def motion_jacobian(state: VehicleState, v: float, dt: float) -> np.ndarray:
    """Jacobian of the unicycle step over the state (x, y, yaw, v).

    Speed is treated as a persistent state coordinate evaluated at ``v``
    (the speed used for the propagation), so position rows carry
    d/dv = cos(yaw)*dt, sin(yaw)*dt and the speed row is the identity.
    """
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidInput(f"dt must be positive, got {dt}")
    yaw = state.pose.yaw
    c, s = math.cos(yaw), math.sin(yaw)
    return np.array(
        [
            [1.0, 0.0, -v * s * dt, c * dt],
            [0.0, 1.0, v * c * dt, s * dt],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def observe_range_bearing(
    pose: Pose2D, landmark: tuple[float, float], landmark_id: int | None = None
) -> RangeBearing:
    """Range and robot-relative bearing from ``pose`` to ``landmark``."""
    dx = landmark[0] - pose.x
    dy = landmark[1] - pose.y
    rng = math.hypot(dx, dy)
    if rng <= 1e-9:
        raise SingularObservation("landmark coincides with the robot position")
    bearing = normalize_angle(math.atan2(dy, dx) - pose.yaw)
    return RangeBearing(rng, bearing, landmark_id)


def observe_jacobian(
    pose: Pose2D, landmark: tuple[float, float]
) -> tuple[np.ndarray, np.ndarray]:
    """Jacobians of (range, bearing) w.r.t. the pose (x, y, yaw) and the landmark (x, y)."""
    dx = landmark[0] - pose.x
    dy = landmark[1] - pose.y
    d2 = dx * dx + dy * dy
    d = math.sqrt(d2)
    if d <= 1e-9:
        raise SingularObservation("landmark coincides with the robot position")
    h_pose = np.array(
        [
            [-dx / d, -dy / d, 0.0],
            [dy / d2, -dx / d2, -1.0],
        ]
    )
    h_lm = np.array(
        [
            [dx / d, dy / d],
            [-dy / d2, dx / d2],
        ]
    )
    return h_pose, h_lm
