"""Extended Kalman filter over (x, y, yaw, v) with GNSS-style position fixes."""

from dataclasses import dataclass

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.models import (
    GaussianBelief,
    Pose2D,
    VehicleState,
    motion_jacobian,
    motion_unicycle,
)
from navsim.errors import InvalidInput, NumericalFailure

# Observation matrix for a position fix: selects (x, y) out of (x, y, yaw, v).
_H = np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]])


@dataclass(frozen=True)
class EkfBelief:
    """Gaussian belief over the 4-state (x, y, yaw, v)."""

    belief: GaussianBelief

    def __post_init__(self):
        if self.belief.dim != 4:
            raise InvalidInput(f"EKF state must be 4-dimensional, got {self.belief.dim}")

    @property
    def mean(self) -> np.ndarray:
        return self.belief.mean

    @property
    def cov(self) -> np.ndarray:
        return self.belief.cov

    @property
    def pose(self) -> Pose2D:
        m = self.belief.mean
        return Pose2D(m[0], m[1], m[2])

    @classmethod
    def from_state(cls, state: VehicleState, cov) -> "EkfBelief":
        return cls(GaussianBelief(state.as_vector(), cov))


def ekf_predict(b: EkfBelief, u: tuple[float, float], q, dt: float) -> EkfBelief:
    """Propagate through the unicycle model; cov <- F P F' + Q."""
    q = np.asarray(q, dtype=float)
    if q.shape != (4, 4):
        raise InvalidInput(f"process noise must be 4x4, got {q.shape}")
    v, omega = u
    mean = b.mean
    state = VehicleState(Pose2D(mean[0], mean[1], mean[2]), mean[3])
    nxt = motion_unicycle(state, v, omega, dt)
    f = motion_jacobian(state, v, dt)
    cov = f @ b.cov @ f.T + q
    cov = 0.5 * (cov + cov.T)
    return EkfBelief(GaussianBelief(nxt.as_vector(), cov))


def ekf_update(b: EkfBelief, z: tuple[float, float], r) -> EkfBelief:
    """Fuse a position fix (x, y) with measurement covariance ``r``.

    Uses the Joseph-form covariance update so the posterior stays symmetric
    positive semidefinite under roundoff.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (2, 2):
        raise InvalidInput(f"measurement noise must be 2x2, got {r.shape}")
    p = b.cov
    s = _H @ p @ _H.T + r
    try:
        k = np.linalg.solve(s, _H @ p).T
    except np.linalg.LinAlgError:
        raise NumericalFailure("innovation covariance is singular") from None
    if not np.all(np.isfinite(k)):
        raise NumericalFailure("innovation covariance is numerically singular")
    innovation = np.asarray(z, dtype=float) - _H @ b.mean
    mean = b.mean + k @ innovation
    mean[2] = normalize_angle(mean[2])
    ikh = np.eye(4) - k @ _H
    cov = ikh @ p @ ikh.T + k @ r @ k.T
    cov = 0.5 * (cov + cov.T)
    return EkfBelief(GaussianBelief(mean, cov))
