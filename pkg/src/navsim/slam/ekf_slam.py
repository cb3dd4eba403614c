"""EKF-SLAM over (x, y, yaw, lm1x, lm1y, ...) with known landmark correspondences."""

import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.models import (
    GaussianBelief,
    Pose2D,
    RangeBearing,
    observe_jacobian,
    observe_range_bearing,
)
from navsim.errors import InvalidInput, NumericalFailure


def landmark_init(p: Pose2D, z: RangeBearing) -> tuple[float, float]:
    """World position implied by observing ``z`` from ``p`` (inverse sensor model)."""
    heading = p.yaw + z.bearing
    return (p.x + z.range * math.cos(heading), p.y + z.range * math.sin(heading))


def inverse_observation_jacobians(
    p: Pose2D, z: RangeBearing
) -> tuple[np.ndarray, np.ndarray]:
    """Jacobians of landmark_init w.r.t. the pose (x, y, yaw) and the measurement (r, b)."""
    heading = p.yaw + z.bearing
    c, s = math.cos(heading), math.sin(heading)
    j_pose = np.array(
        [
            [1.0, 0.0, -z.range * s],
            [0.0, 1.0, z.range * c],
        ]
    )
    j_z = np.array(
        [
            [c, -z.range * s],
            [s, z.range * c],
        ]
    )
    return j_pose, j_z


@dataclass(frozen=True)
class EkfSlamState:
    """Joint Gaussian over the robot pose and every registered landmark.

    ``registry`` maps landmark id -> index of the landmark's x coordinate in
    the mean vector (its y coordinate sits at the next slot).
    """

    belief: GaussianBelief
    registry: MappingProxyType

    def __post_init__(self):
        n = self.belief.dim
        if n < 3 or (n - 3) % 2 != 0:
            raise InvalidInput(f"state length must be 3 + 2M, got {n}")
        slots = sorted(self.registry.values())
        expected = list(range(3, n, 2))
        if slots != expected:
            raise InvalidInput("landmark registry slots must tile 3, 5, ... exactly once")
        object.__setattr__(self, "registry", MappingProxyType(dict(self.registry)))

    @classmethod
    def initial(cls, pose: Pose2D = Pose2D(), pose_cov=None) -> "EkfSlamState":
        cov = np.zeros((3, 3)) if pose_cov is None else np.asarray(pose_cov, dtype=float)
        mean = np.array([pose.x, pose.y, pose.yaw])
        return cls(GaussianBelief(mean, cov), MappingProxyType({}))

    @property
    def pose(self) -> Pose2D:
        m = self.belief.mean
        return Pose2D(m[0], m[1], m[2])

    @property
    def landmark_count(self) -> int:
        return (self.belief.dim - 3) // 2

    def landmark_mean(self, landmark_id: int) -> tuple[float, float]:
        slot = self.registry[landmark_id]
        m = self.belief.mean
        return (float(m[slot]), float(m[slot + 1]))


def _predict(mean, cov, u, dt, q_pose):
    v, omega = u
    yaw = mean[2]
    c, s = math.cos(yaw), math.sin(yaw)
    mean = mean.copy()
    mean[0] += v * c * dt
    mean[1] += v * s * dt
    mean[2] = normalize_angle(mean[2] + omega * dt)
    g = np.array([[1.0, 0.0, -v * s * dt], [0.0, 1.0, v * c * dt], [0.0, 0.0, 1.0]])
    cov = cov.copy()
    cov[:3, :3] = g @ cov[:3, :3] @ g.T + q_pose
    cov[:3, 3:] = g @ cov[:3, 3:]
    cov[3:, :3] = cov[:3, 3:].T
    return mean, cov


def _update(mean, cov, slot, obs, r_obs):
    n = mean.shape[0]
    pose = Pose2D(mean[0], mean[1], mean[2])
    lm = (mean[slot], mean[slot + 1])
    predicted = observe_range_bearing(pose, lm)
    h_pose, h_lm = observe_jacobian(pose, lm)
    h = np.zeros((2, n))
    h[:, :3] = h_pose
    h[:, slot : slot + 2] = h_lm
    ph_t = cov @ h.T
    s = h @ ph_t + r_obs
    try:
        k = np.linalg.solve(s, ph_t.T).T
    except np.linalg.LinAlgError:
        raise NumericalFailure("innovation covariance is singular") from None
    if not np.all(np.isfinite(k)):
        raise NumericalFailure("innovation covariance is numerically singular")
    innovation = np.array(
        [obs.range - predicted.range, normalize_angle(obs.bearing - predicted.bearing)]
    )
    mean = mean + k @ innovation
    mean[2] = normalize_angle(mean[2])
    ikh = np.eye(n) - k @ h
    cov = ikh @ cov @ ikh.T + k @ r_obs @ k.T
    return mean, 0.5 * (cov + cov.T)


def _augment(mean, cov, obs, r_obs):
    pose = Pose2D(mean[0], mean[1], mean[2])
    lm = landmark_init(pose, obs)
    j_pose, j_z = inverse_observation_jacobians(pose, obs)
    n = mean.shape[0]
    cross = j_pose @ cov[:3, :]  # (2, n)
    block = j_pose @ cov[:3, :3] @ j_pose.T + j_z @ r_obs @ j_z.T
    new_mean = np.concatenate([mean, lm])
    new_cov = np.zeros((n + 2, n + 2))
    new_cov[:n, :n] = cov
    new_cov[n:, :n] = cross
    new_cov[:n, n:] = cross.T
    new_cov[n:, n:] = block
    return new_mean, 0.5 * (new_cov + new_cov.T)


def ekf_slam_step(
    s: EkfSlamState,
    u: tuple[float, float],
    dt: float,
    z: list[RangeBearing],
    q_pose,
    r_obs,
) -> EkfSlamState:
    """One predict + sequential-update cycle with known correspondences.

    The pose block is propagated through the unicycle model (landmarks are
    static). Observations of registered ids apply joint EKF updates with the
    bearing innovation wrapped; ids never seen before extend the state with
    the inverse-observation mean and a covariance propagated from the pose
    block plus the measurement noise.
    """
    if not dt > 0:
        raise InvalidInput(f"dt must be positive, got {dt}")
    q_pose = np.asarray(q_pose, dtype=float)
    r_obs = np.asarray(r_obs, dtype=float)
    if q_pose.shape != (3, 3):
        raise InvalidInput(f"pose process noise must be 3x3, got {q_pose.shape}")
    if r_obs.shape != (2, 2):
        raise InvalidInput(f"observation noise must be 2x2, got {r_obs.shape}")

    mean, cov = _predict(s.belief.mean, s.belief.cov, u, dt, q_pose)
    registry = dict(s.registry)
    for obs in z:
        if obs.landmark_id is None:
            raise InvalidInput("EKF-SLAM observations need landmark ids")
        if obs.landmark_id in registry:
            mean, cov = _update(mean, cov, registry[obs.landmark_id], obs, r_obs)
        else:
            registry[obs.landmark_id] = mean.shape[0]
            mean, cov = _augment(mean, cov, obs, r_obs)
    return EkfSlamState(GaussianBelief(mean, cov), MappingProxyType(registry))
