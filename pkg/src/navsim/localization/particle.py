"""Particle-filter localization with low-variance (systematic) resampling."""

import math
from dataclasses import dataclass

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.models import (
    Pose2D,
    RangeBearing,
    SensorNoise,
    VehicleState,
    motion_unicycle,
    observe_range_bearing,
)
from navsim.core.rng import RngStream, gauss, uniform
from navsim.errors import DegenerateBelief, InvalidInput

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gaussian_pdf(residual: float, std: float) -> float:
    """Univariate normal density of ``residual`` around zero."""
    return math.exp(-0.5 * (residual / std) ** 2) / (std * _SQRT_2PI)


@dataclass(frozen=True)
class Particle:
    pose: Pose2D
    weight: float


@dataclass(frozen=True)
class ParticleSet:
    """Weighted pose hypotheses; weights are kept normalized by the step/resample ops."""

    particles: tuple[Particle, ...]

    def __post_init__(self):
        if len(self.particles) < 1:
            raise InvalidInput("particle set must hold at least one particle")
        if any(p.weight < 0 for p in self.particles):
            raise InvalidInput("particle weights must be non-negative")
        object.__setattr__(self, "particles", tuple(self.particles))

    def __len__(self) -> int:
        return len(self.particles)

    @property
    def weights(self) -> np.ndarray:
        return np.array([p.weight for p in self.particles])

    @classmethod
    def from_poses(cls, poses) -> "ParticleSet":
        poses = list(poses)
        w = 1.0 / len(poses)
        return cls(tuple(Particle(p, w) for p in poses))


def mean_pose(poses, weights) -> Pose2D:
    """Weighted mean position with a circular (atan2) mean for yaw."""
    x = y = sin_sum = cos_sum = 0.0
    for pose, w in zip(poses, weights):
        x += w * pose.x
        y += w * pose.y
        sin_sum += w * math.sin(pose.yaw)
        cos_sum += w * math.cos(pose.yaw)
    return Pose2D(x, y, math.atan2(sin_sum, cos_sum))


def estimate(p: ParticleSet) -> Pose2D:
    """Weighted-mean pose of the set."""
    return mean_pose((pt.pose for pt in p.particles), (pt.weight for pt in p.particles))


def effective_sample_size(p: ParticleSet) -> float:
    """ESS = 1 / sum(w^2); expects normalized weights, so the result is in [1, N]."""
    return 1.0 / float(np.sum(p.weights**2))


def systematic_indices(weights, count: int, rng: RngStream) -> tuple[list[int], RngStream]:
    """Indices of ``count`` survivors drawn with one uniform offset and stride 1/count."""
    offset, rng = uniform(rng)
    offset /= count
    indices: list[int] = []
    cum = weights[0]
    j = 0
    last = len(weights) - 1
    for i in range(count):
        target = offset + i / count
        while cum < target and j < last:
            j += 1
            cum += weights[j]
        indices.append(j)
    return indices, rng


def resample_low_variance(
    p: ParticleSet, rng: RngStream, count: int | None = None
) -> tuple[ParticleSet, RngStream]:
    """Systematic resampling to ``count`` particles (defaults to len(p)), weights reset to 1/count."""
    n = len(p) if count is None else count
    if n < 1:
        raise InvalidInput("resample count must be >= 1")
    idx, rng = systematic_indices(p.weights, n, rng)
    w = 1.0 / n
    survivors = tuple(Particle(p.particles[i].pose, w) for i in idx)
    return ParticleSet(survivors), rng


def pf_step(
    p: ParticleSet,
    u: tuple[float, float],
    dt: float,
    landmarks,
    z: list[RangeBearing],
    noise: SensorNoise,
    rng: RngStream,
) -> tuple[ParticleSet, RngStream]:
    """One predict/weight/resample cycle.

    Each particle is propagated through the unicycle model with per-particle
    control noise, then reweighted by the Gaussian likelihood of every
    observation's range/bearing residual (bearing wrapped). Weights are
    renormalized and the set is systematically resampled when ESS < N/2.
    """
    v_cmd, omega_cmd = u
    landmarks = np.asarray(landmarks, dtype=float)
    moved: list[Pose2D] = []
    weights: list[float] = []
    for particle in p.particles:
        v, rng = gauss(rng, v_cmd, noise.v_std)
        omega, rng = gauss(rng, omega_cmd, noise.omega_std)
        state = motion_unicycle(VehicleState(particle.pose, v), v, omega, dt)
        pose = state.pose
        w = particle.weight
        for obs in z:
            if obs.landmark_id is None:
                raise InvalidInput("particle-filter observations need landmark ids")
            lm = landmarks[obs.landmark_id]
            pred = observe_range_bearing(pose, (lm[0], lm[1]))
            w *= gaussian_pdf(obs.range - pred.range, noise.range_std)
            w *= gaussian_pdf(normalize_angle(obs.bearing - pred.bearing), noise.bearing_std)
        moved.append(pose)
        weights.append(w)
    total = sum(weights)
    if not (total > 0.0 and math.isfinite(total)):
        raise DegenerateBelief("all particle weights underflowed to zero")
    updated = ParticleSet(
        tuple(Particle(pose, w / total) for pose, w in zip(moved, weights))
    )
    if effective_sample_size(updated) < len(updated) / 2:
        updated, rng = resample_low_variance(updated, rng)
    return updated, rng
