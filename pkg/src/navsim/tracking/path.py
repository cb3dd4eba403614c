"""Reference paths and the cross-track/heading error geometry."""

import math
from dataclasses import dataclass

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.models import Pose2D
from navsim.errors import InvalidInput


@dataclass(frozen=True)
class Waypoint:
    x: float
    y: float
    yaw: float
    curvature: float
    target_speed: float


@dataclass(frozen=True)
class ReferencePath:
    """At least two waypoints, consecutive ones separated by more than 1e-6 m."""

    waypoints: tuple[Waypoint, ...]

    def __post_init__(self):
        wps = tuple(self.waypoints)
        if len(wps) < 2:
            raise InvalidInput("reference path needs at least 2 waypoints")
        for a, b in zip(wps, wps[1:]):
            if math.hypot(b.x - a.x, b.y - a.y) <= 1e-6:
                raise InvalidInput("consecutive waypoints must be > 1e-6 m apart")
        object.__setattr__(self, "waypoints", wps)
        xy = np.array([[w.x, w.y] for w in wps])
        xy.setflags(write=False)
        object.__setattr__(self, "_xy", xy)

    def __len__(self) -> int:
        return len(self.waypoints)

    @property
    def xy(self) -> np.ndarray:
        return self._xy

    @classmethod
    def from_xy(cls, xs, ys, target_speed: float) -> "ReferencePath":
        """Build a path from coordinates; yaw from forward differences and
        curvature from the wrapped yaw change per arc length."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.shape != ys.shape or xs.ndim != 1 or xs.size < 2:
            raise InvalidInput("need matching 1D coordinate arrays with >= 2 points")
        dx = np.diff(xs)
        dy = np.diff(ys)
        seg_yaw = np.arctan2(dy, dx)
        yaws = np.append(seg_yaw, seg_yaw[-1])
        seg_len = np.hypot(dx, dy)
        curvature = np.zeros_like(xs)
        for i in range(1, xs.size - 1):
            curvature[i] = normalize_angle(seg_yaw[i] - seg_yaw[i - 1]) / seg_len[i - 1]
        wps = tuple(
            Waypoint(float(x), float(y), float(yaw), float(kappa), float(target_speed))
            for x, y, yaw, kappa in zip(xs, ys, yaws, curvature)
        )
        return cls(wps)


def nearest_path_point(pose: Pose2D, ref: ReferencePath) -> tuple[int, float, float]:
    """Closest waypoint index with the signed cross-track and heading errors.

    The cross-track error e is positive when the robot sits left of the path
    tangent; theta_e = wrap(yaw - path yaw).
    """
    diffs = ref.xy - np.array([pose.x, pose.y])
    idx = int(np.argmin(diffs[:, 0] ** 2 + diffs[:, 1] ** 2))
    wp = ref.waypoints[idx]
    # Left normal of the tangent is (-sin yaw, cos yaw).
    e = (pose.x - wp.x) * -math.sin(wp.yaw) + (pose.y - wp.y) * math.cos(wp.yaw)
    theta_e = normalize_angle(pose.yaw - wp.yaw)
    return idx, float(e), theta_e
