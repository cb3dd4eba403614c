"""FastSLAM 2.0: Rao-Blackwellized particles with per-landmark mini-EKFs.

The proposal refines the motion prediction with each observation in turn
(linearized in pose space) before the pose is sampled, which is what keeps
the filter usable with few particles.
"""

import math
from dataclasses import dataclass

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.linalg import cholesky
from navsim.core.models import (
    Pose2D,
    RangeBearing,
    SensorNoise,
    VehicleState,
    motion_unicycle,
    observe_jacobian,
    observe_range_bearing,
)
from navsim.core.rng import RngStream, gauss, next_u64
from navsim.errors import DegenerateBelief, InvalidInput
from navsim.localization.particle import mean_pose, systematic_indices
from navsim.slam.ekf_slam import inverse_observation_jacobians, landmark_init


@dataclass(frozen=True)
class LandmarkFilter:
    """2D Gaussian mini-filter for one landmark; immutable so particles can share."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(2)
        cov = np.array(self.cov, dtype=float).reshape(2, 2)
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


@dataclass(frozen=True)
class FastSlamParticle:
    pose: Pose2D
    weight: float
    landmarks: dict  # landmark_id -> LandmarkFilter


def fastslam_estimate(particles: list[FastSlamParticle]) -> Pose2D:
    """Weighted-mean pose; yaw averaged via atan2 of the weighted sin/cos sums."""
    return mean_pose((p.pose for p in particles), (p.weight for p in particles))


def _pose_motion_cov(yaw: float, dt: float, noise: SensorNoise) -> np.ndarray:
    """Control noise mapped into pose space through the motion Jacobian w.r.t. (v, omega)."""
    v_var = noise.v_std**2
    w_var = noise.omega_std**2
    if v_var == 0.0 and w_var == 0.0:
        return np.zeros((3, 3))
    jac_u = np.array([[math.cos(yaw) * dt, 0.0], [math.sin(yaw) * dt, 0.0], [0.0, dt]])
    cov = jac_u @ np.diag([v_var, w_var]) @ jac_u.T
    # Rank-2 by construction; a small ridge keeps the proposal sampleable.
    return cov + 1e-10 * np.eye(3)


def _sample_pose(mu: np.ndarray, sigma: np.ndarray, rng: RngStream) -> tuple[Pose2D, RngStream]:
    if np.max(np.abs(sigma)) == 0.0:
        return Pose2D(mu[0], mu[1], mu[2]), rng
    low = cholesky(sigma)
    draws = np.empty(3)
    for i in range(3):
        draws[i], rng = gauss(rng)
    sample = mu + low @ draws
    return Pose2D(sample[0], sample[1], sample[2]), rng


def _landmark_update(lmf: LandmarkFilter, pose: Pose2D, obs: RangeBearing, r_obs) -> LandmarkFilter:
    predicted = observe_range_bearing(pose, (lmf.mean[0], lmf.mean[1]))
    _, h_lm = observe_jacobian(pose, (lmf.mean[0], lmf.mean[1]))
    s = h_lm @ lmf.cov @ h_lm.T + r_obs
    k = np.linalg.solve(s, h_lm @ lmf.cov).T
    innovation = np.array(
        [obs.range - predicted.range, normalize_angle(obs.bearing - predicted.bearing)]
    )
    mean = lmf.mean + k @ innovation
    ikh = np.eye(2) - k @ h_lm
    cov = ikh @ lmf.cov @ ikh.T + k @ r_obs @ k.T
    return LandmarkFilter(mean, 0.5 * (cov + cov.T))


def _mvn_pdf2(residual: np.ndarray, cov: np.ndarray) -> float:
    det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
    if det <= 0:
        raise DegenerateBelief("evidence covariance is not positive definite")
    inv = np.array([[cov[1, 1], -cov[0, 1]], [-cov[1, 0], cov[0, 0]]]) / det
    quad = float(residual @ inv @ residual)
    return math.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(det))


def fastslam2_step(
    particles: list[FastSlamParticle],
    u: tuple[float, float],
    dt: float,
    z: list[RangeBearing],
    noise: SensorNoise,
    rng: RngStream,
) -> tuple[list[FastSlamParticle], RngStream]:
    """Advance every particle one step and resample when ESS < N/2.

    Per particle: the motion prediction is refined by the linearized
    likelihood of each known-landmark observation (sequentially), the pose is
    sampled from that proposal, landmark mini-EKFs are updated at the sampled
    pose, and the weight picks up each observation's evidence term. New ids
    spawn a mini-filter seeded through the inverse-observation Jacobian.

    Particle i draws from the substream with state (base XOR i), where
    ``base`` is one u64 from the master stream, so a parallel evaluation
    would be bit-identical to this sequential one.
    """
    if len(particles) < 1:
        raise InvalidInput("need at least one particle")
    if not dt > 0:
        raise InvalidInput(f"dt must be positive, got {dt}")
    v_cmd, omega_cmd = u
    r_obs = np.diag([noise.range_std**2, noise.bearing_std**2])
    base, rng = next_u64(rng)

    updated: list[FastSlamParticle] = []
    weights: list[float] = []
    for i, particle in enumerate(particles):
        sub = RngStream(base ^ i)
        predicted = motion_unicycle(VehicleState(particle.pose, v_cmd), v_cmd, omega_cmd, dt)
        mu = predicted.pose
        mu_vec = np.array([mu.x, mu.y, mu.yaw])
        sigma = _pose_motion_cov(particle.pose.yaw, dt, noise)

        weight = particle.weight
        known = [obs for obs in z if obs.landmark_id in particle.landmarks]
        new = [obs for obs in z if obs.landmark_id not in particle.landmarks]
        for obs in known:
            lmf = particle.landmarks[obs.landmark_id]
            pose_lin = Pose2D(mu_vec[0], mu_vec[1], mu_vec[2])
            pred = observe_range_bearing(pose_lin, (lmf.mean[0], lmf.mean[1]))
            h_pose, h_lm = observe_jacobian(pose_lin, (lmf.mean[0], lmf.mean[1]))
            q_j = h_lm @ lmf.cov @ h_lm.T + r_obs
            s = h_pose @ sigma @ h_pose.T + q_j
            residual = np.array(
                [obs.range - pred.range, normalize_angle(obs.bearing - pred.bearing)]
            )
            weight *= _mvn_pdf2(residual, s)
            k = np.linalg.solve(s, h_pose @ sigma).T
            mu_vec = mu_vec + k @ residual
            mu_vec[2] = normalize_angle(mu_vec[2])
            ikh = np.eye(3) - k @ h_pose
            sigma = ikh @ sigma @ ikh.T + k @ q_j @ k.T
            sigma = 0.5 * (sigma + sigma.T)

        pose, sub = _sample_pose(mu_vec, sigma, sub)

        landmarks = dict(particle.landmarks)
        for obs in known:
            landmarks[obs.landmark_id] = _landmark_update(
                landmarks[obs.landmark_id], pose, obs, r_obs
            )
        for obs in new:
            if obs.landmark_id is None:
                raise InvalidInput("FastSLAM observations need landmark ids")
            mean = np.array(landmark_init(pose, obs))
            _, j_z = inverse_observation_jacobians(pose, obs)
            landmarks[obs.landmark_id] = LandmarkFilter(mean, j_z @ r_obs @ j_z.T)

        updated.append(FastSlamParticle(pose, weight, landmarks))
        weights.append(weight)

    total = sum(weights)
    if not (total > 0.0 and math.isfinite(total)):
        raise DegenerateBelief("all FastSLAM particle weights collapsed to zero")
    normalized = [
        FastSlamParticle(p.pose, w / total, p.landmarks) for p, w in zip(updated, weights)
    ]
    w_arr = np.array([p.weight for p in normalized])
    ess = 1.0 / float(np.sum(w_arr**2))
    if ess < len(normalized) / 2:
        idx, rng = systematic_indices(w_arr, len(normalized), rng)
        even = 1.0 / len(normalized)
        normalized = [
            FastSlamParticle(normalized[j].pose, even, normalized[j].landmarks) for j in idx
        ]
    return normalized, rng
