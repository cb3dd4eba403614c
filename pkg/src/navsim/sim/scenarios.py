"""Seeded closed-loop scenarios behind the demo registry.

Each runner owns one splitmix64 stream, steps a ground-truth world, feeds the
algorithm under test the same noisy data a robot would see, and returns the
full per-step history so both the demo traces and the invariant tests can
read from a single source.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.models import (
    Pose2D,
    RangeBearing,
    SensorNoise,
    VehicleState,
    motion_bicycle,
    motion_unicycle,
    observe_range_bearing,
)
from navsim.core.rng import RngStream, gauss, uniform
from navsim.errors import InvalidInput
from navsim.localization.ekf import EkfBelief, ekf_predict, ekf_update
from navsim.localization.histogram import HistogramBelief, hf_predict, hf_update
from navsim.localization.particle import (
    ParticleSet,
    effective_sample_size,
    estimate,
    pf_step,
)
from navsim.mapping.grid import OccupancyGrid, grid_update_scan
from navsim.mapping.kmeans import Clustering, kmeans_cluster
from navsim.planning.grid_search import GridWorld, plan_grid
from navsim.slam.ekf_slam import EkfSlamState, ekf_slam_step
from navsim.slam.fastslam import FastSlamParticle, fastslam2_step, fastslam_estimate
from navsim.tracking.mpc import MpcParams, mpc_track_step, reference_window
from navsim.tracking.path import ReferencePath, nearest_path_point
from navsim.tracking.pid import PidState, pid_step
from navsim.tracking.rear_wheel import rear_wheel_feedback

# Canonical circular drive: v = 1 m/s, yaw rate 0.1 rad/s -> radius 10 m
# circle centered at (0, 10) when starting from the origin heading +x.
CIRCLE_V = 1.0
CIRCLE_OMEGA = 0.1
CIRCLE_CENTER = (0.0, 10.0)

# Eight landmarks on a 20 m circle around the drive center.
SLAM_LANDMARKS = tuple(
    (
        CIRCLE_CENTER[0] + 20.0 * math.cos(k * math.pi / 4.0),
        CIRCLE_CENTER[1] + 20.0 * math.sin(k * math.pi / 4.0),
    )
    for k in range(8)
)

LOCALIZATION_LANDMARKS = ((-15.0, -5.0), (15.0, -5.0), (15.0, 25.0), (-15.0, 25.0))


def n_steps(duration: float, dt: float) -> int:
    if not dt > 0 or duration < dt:
        raise InvalidInput(f"need dt > 0 and duration >= dt, got dt={dt}, duration={duration}")
    return int(round(duration / dt))


def control_noise_cov4(noise: SensorNoise, yaw: float, dt: float) -> np.ndarray:
    """Odometry noise mapped into (x, y, yaw, v) space, ridge-regularized."""
    jac = np.array(
        [
            [math.cos(yaw) * dt, 0.0],
            [math.sin(yaw) * dt, 0.0],
            [0.0, dt],
            [1.0, 0.0],
        ]
    )
    cov = jac @ np.diag([noise.v_std**2, noise.omega_std**2]) @ jac.T
    return cov + 1e-9 * np.eye(4)


def control_noise_cov3(noise: SensorNoise, yaw: float, dt: float) -> np.ndarray:
    """Odometry noise mapped into (x, y, yaw) space for the SLAM predict."""
    if noise.v_std == 0.0 and noise.omega_std == 0.0:
        return np.zeros((3, 3))
    jac = np.array(
        [[math.cos(yaw) * dt, 0.0], [math.sin(yaw) * dt, 0.0], [0.0, dt]]
    )
    cov = jac @ np.diag([noise.v_std**2, noise.omega_std**2]) @ jac.T
    return cov + 1e-12 * np.eye(3)


# ---------------------------------------------------------------------------
# Localization


@dataclass
class LocalizationRun:
    t: np.ndarray
    truth: np.ndarray  # (n, 3) pose rows
    dead: np.ndarray
    est: np.ndarray
    beliefs: list = field(default_factory=list)  # per-step EkfBelief (EKF runner only)
    ess: np.ndarray | None = None
    weight_sums: np.ndarray | None = None
    mass: np.ndarray | None = None

    def rmse_est(self) -> float:
        return position_rmse(self.est, self.truth)

    def rmse_dead(self) -> float:
        return position_rmse(self.dead, self.truth)


def position_rmse(a: np.ndarray, b: np.ndarray) -> float:
    d = a[:, :2] - b[:, :2]
    return float(np.sqrt(np.mean(np.sum(d * d, axis=1))))


def run_ekf_localization(
    seed: int, dt: float = 0.1, duration: float = 60.0, noise: SensorNoise = SensorNoise()
) -> LocalizationRun:
    """Circle drive with noisy odometry and a noisy GNSS fix every step."""
    steps = n_steps(duration, dt)
    rng = RngStream(seed)
    truth = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    dead = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    belief = EkfBelief.from_state(truth, np.diag([0.01, 0.01, 0.001, 0.01]))
    r_gnss = np.diag([noise.gnss_std**2, noise.gnss_std**2])

    ts, truth_h, dead_h, est_h, beliefs = [], [], [], [], []
    for k in range(steps):
        truth = motion_unicycle(truth, CIRCLE_V, CIRCLE_OMEGA, dt)
        v_meas, rng = gauss(rng, CIRCLE_V, noise.v_std)
        w_meas, rng = gauss(rng, CIRCLE_OMEGA, noise.omega_std)
        dead = motion_unicycle(dead, v_meas, w_meas, dt)
        gx, rng = gauss(rng, truth.pose.x, noise.gnss_std)
        gy, rng = gauss(rng, truth.pose.y, noise.gnss_std)
        q = control_noise_cov4(noise, belief.mean[2], dt)
        belief = ekf_predict(belief, (v_meas, w_meas), q, dt)
        belief = ekf_update(belief, (gx, gy), r_gnss)
        ts.append((k + 1) * dt)
        truth_h.append([truth.pose.x, truth.pose.y, truth.pose.yaw])
        dead_h.append([dead.pose.x, dead.pose.y, dead.pose.yaw])
        est_h.append([belief.mean[0], belief.mean[1], belief.mean[2]])
        beliefs.append(belief)
    return LocalizationRun(
        np.array(ts), np.array(truth_h), np.array(dead_h), np.array(est_h), beliefs
    )


def run_particle_localization(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    noise: SensorNoise = SensorNoise(),
    n_particles: int = 100,
) -> LocalizationRun:
    """Circle drive with noisy odometry and range-bearing fixes on 4 landmarks."""
    steps = n_steps(duration, dt)
    rng = RngStream(seed)
    landmarks = np.array(LOCALIZATION_LANDMARKS)
    truth = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    dead = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    particles = ParticleSet.from_poses([truth.pose] * n_particles)

    ts, truth_h, dead_h, est_h = [], [], [], []
    ess_h, wsum_h = [], []
    for k in range(steps):
        truth = motion_unicycle(truth, CIRCLE_V, CIRCLE_OMEGA, dt)
        v_meas, rng = gauss(rng, CIRCLE_V, noise.v_std)
        w_meas, rng = gauss(rng, CIRCLE_OMEGA, noise.omega_std)
        dead = motion_unicycle(dead, v_meas, w_meas, dt)
        observations = []
        for lm_id, lm in enumerate(landmarks):
            z_true = observe_range_bearing(truth.pose, (lm[0], lm[1]), lm_id)
            r_meas, rng = gauss(rng, z_true.range, noise.range_std)
            b_meas, rng = gauss(rng, z_true.bearing, noise.bearing_std)
            if r_meas > 0:
                observations.append(RangeBearing(r_meas, b_meas, lm_id))
        particles, rng = pf_step(
            particles, (v_meas, w_meas), dt, landmarks, observations, noise, rng
        )
        pose = estimate(particles)
        ts.append((k + 1) * dt)
        truth_h.append([truth.pose.x, truth.pose.y, truth.pose.yaw])
        dead_h.append([dead.pose.x, dead.pose.y, dead.pose.yaw])
        est_h.append([pose.x, pose.y, pose.yaw])
        ess_h.append(effective_sample_size(particles))
        wsum_h.append(float(particles.weights.sum()))
    return LocalizationRun(
        np.array(ts),
        np.array(truth_h),
        np.array(dead_h),
        np.array(est_h),
        ess=np.array(ess_h),
        weight_sums=np.array(wsum_h),
    )


# Square circuit of commanded one-cell moves: east, north, west, south.
_CIRCUIT = ((1, 0), (0, 1), (-1, 0), (0, -1))


def run_histogram_localization(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    nx: int = 40,
    ny: int = 40,
    resolution: float = 1.0,
    slip_std: float = 0.3,
    filter_std: float = 0.4,
    obs_std: float = 0.7,
    leg: int = 10,
) -> LocalizationRun:
    """Square-circuit drive on a cell lattice with slippage, ranged off 4 landmarks.

    The commanded motion is one cell per step around a square; the true
    position picks up Gaussian slip each step. Dead reckoning integrates the
    commands only. The filter shifts/blurs by the command and fuses the noisy
    ranges; its estimate is the posterior-mean position.
    """
    steps = n_steps(duration, dt)
    rng = RngStream(seed)
    origin = (-nx * resolution / 2.0, -ny * resolution / 2.0)
    landmarks = np.array(
        [(-12.0, -12.0), (12.0, -12.0), (12.0, 12.0), (-12.0, 12.0)]
    )
    belief = HistogramBelief.uniform(nx, ny, resolution, origin)
    # Concentrate the prior at the known start cell (the grid center).
    delta = np.zeros((nx, ny))
    delta[nx // 2, ny // 2] = 1.0
    belief = HistogramBelief(delta, resolution, origin)
    start = (origin[0] + (nx // 2 + 0.5) * resolution, origin[1] + (ny // 2 + 0.5) * resolution)
    true_xy = np.array(start)
    dead_xy = np.array(start)

    ts, truth_h, dead_h, est_h, mass_h = [], [], [], [], []
    for k in range(steps):
        shift = _CIRCUIT[(k // leg) % 4]
        slip_x, rng = gauss(rng, 0.0, slip_std * resolution)
        slip_y, rng = gauss(rng, 0.0, slip_std * resolution)
        true_xy = true_xy + np.array(
            [shift[0] * resolution + slip_x, shift[1] * resolution + slip_y]
        )
        dead_xy = dead_xy + np.array([shift[0] * resolution, shift[1] * resolution])
        belief = hf_predict(belief, shift, filter_std)
        mass_h.append(float(belief.grid.sum()))
        ranges = []
        for lm in landmarks:
            true_range = math.hypot(true_xy[0] - lm[0], true_xy[1] - lm[1])
            r_meas, rng = gauss(rng, true_range, obs_std)
            ranges.append(max(r_meas, 1e-6))
        belief = hf_update(belief, landmarks, ranges, obs_std)
        mass_h.append(float(belief.grid.sum()))
        ex, ey = belief.mean_position()
        ts.append((k + 1) * dt)
        truth_h.append([true_xy[0], true_xy[1], 0.0])
        dead_h.append([dead_xy[0], dead_xy[1], 0.0])
        est_h.append([ex, ey, 0.0])
    return LocalizationRun(
        np.array(ts),
        np.array(truth_h),
        np.array(dead_h),
        np.array(est_h),
        mass=np.array(mass_h),
    )


# ---------------------------------------------------------------------------
# Mapping


def ray_segment_range(origin, angle: float, segments, max_range: float) -> float:
    """Distance along the beam to the nearest wall segment, or max_range."""
    ox, oy = origin
    dx, dy = math.cos(angle), math.sin(angle)
    best = max_range
    for (ax, ay), (bx, by) in segments:
        ex, ey = bx - ax, by - ay
        denom = dx * ey - dy * ex
        if abs(denom) < 1e-12:
            continue
        t = ((ax - ox) * ey - (ay - oy) * ex) / denom
        s = ((ax - ox) * dy - (ay - oy) * dx) / denom
        if 0.0 < t < best and 0.0 <= s <= 1.0:
            best = t
    return best


def _box_segments(x0, y0, x1, y1):
    return [
        ((x0, y0), (x1, y0)),
        ((x1, y0), (x1, y1)),
        ((x1, y1), (x0, y1)),
        ((x0, y1), (x0, y0)),
    ]


MAPPING_WALLS = tuple(
    _box_segments(-10.0, -10.0, 10.0, 10.0)
    + _box_segments(-6.0, 2.0, -3.0, 5.0)
    + _box_segments(3.0, -6.0, 6.0, -3.0)
)


@dataclass
class MappingRun:
    t: np.ndarray
    poses: np.ndarray  # (n, 3)
    grid: OccupancyGrid
    coverage: np.ndarray
    map_error: np.ndarray
    truth_occupied: np.ndarray


def true_occupancy(grid: OccupancyGrid, segments) -> np.ndarray:
    """Boolean mask of cells a wall segment passes through (sampled densely)."""
    occupied = np.zeros((grid.width, grid.height), dtype=bool)
    step = grid.resolution / 4.0
    for (ax, ay), (bx, by) in segments:
        length = math.hypot(bx - ax, by - ay)
        for i in range(int(length / step) + 1):
            t = min(i * step / length, 1.0)
            cell = grid.world_to_cell(ax + t * (bx - ax), ay + t * (by - ay))
            if grid.in_bounds(cell):
                occupied[cell] = True
    return occupied


def run_grid_mapping(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    n_beams: int = 72,
    max_range: float = 12.0,
    range_std: float = 0.02,
) -> MappingRun:
    """Robot circles inside a walled room, folding every lidar scan into the grid."""
    steps = n_steps(duration, dt)
    rng = RngStream(seed)
    grid = OccupancyGrid.empty(50, 50, 0.5, (-12.5, -12.5))
    truth_occ = true_occupancy(grid, MAPPING_WALLS)
    pose = Pose2D(0.0, -5.0, 0.0)
    v, omega = 1.0, 0.2  # radius-5 circle inside the room

    ts, poses, coverage, map_err = [], [], [], []
    for k in range(steps):
        state = motion_unicycle(VehicleState(pose, v), v, omega, dt)
        pose = state.pose
        scan = []
        for b in range(n_beams):
            angle = 2.0 * math.pi * b / n_beams
            true_range = ray_segment_range(
                (pose.x, pose.y), pose.yaw + angle, MAPPING_WALLS, max_range
            )
            noisy, rng = gauss(rng, true_range, range_std)
            scan.append((angle, min(max(noisy, 1e-3), max_range)))
        grid = grid_update_scan(grid, pose, scan, max_range)
        determined = np.abs(grid.cells) > 1.0
        n_det = int(determined.sum())
        classified_occ = grid.cells > 0
        wrong = determined & (classified_occ != truth_occ)
        ts.append((k + 1) * dt)
        poses.append([pose.x, pose.y, pose.yaw])
        coverage.append(n_det / grid.cells.size)
        map_err.append(int(wrong.sum()) / n_det if n_det else 0.0)
    return MappingRun(
        np.array(ts), np.array(poses), grid, np.array(coverage), np.array(map_err), truth_occ
    )


@dataclass
class KmeansRun:
    points: np.ndarray
    true_centers: np.ndarray
    clustering: Clustering
    history: list  # (iteration, centroids, assignment, sse)


def run_kmeans(seed: int, n_points: int = 200, k: int = 4) -> KmeansRun:
    """Cluster seeded Gaussian blobs, recording every Lloyd iteration."""
    rng = RngStream(seed)
    centers = np.array([(-8.0, -8.0), (8.0, -8.0), (8.0, 8.0), (-8.0, 8.0)])[:k]
    pts = []
    for i in range(n_points):
        cx, cy = centers[i % k]
        x, rng = gauss(rng, cx, 1.5)
        y, rng = gauss(rng, cy, 1.5)
        pts.append((x, y))
    points = np.array(pts)
    history = []
    clustering = kmeans_cluster(
        points,
        k,
        rng,
        max_iters=50,
        on_iteration=lambda i, c, a, s: history.append((i, c, a, s)),
    )
    return KmeansRun(points, centers, clustering, history)


# ---------------------------------------------------------------------------
# SLAM


@dataclass
class SlamRun:
    t: np.ndarray
    truth: np.ndarray
    dead: np.ndarray
    est: np.ndarray
    landmarks: np.ndarray  # true positions, row = id
    landmark_est: dict  # id -> (x, y)
    states: list = field(default_factory=list)  # per-step EkfSlamState (EKF runner)
    ess: np.ndarray | None = None
    weight_sums: np.ndarray | None = None

    def rmse_est(self) -> float:
        return position_rmse(self.est, self.truth)

    def rmse_dead(self) -> float:
        return position_rmse(self.dead, self.truth)


def run_ekf_slam(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    noise: SensorNoise = SensorNoise(),
    observation_noise: bool = True,
    max_range: float = 15.0,
) -> SlamRun:
    """Circle drive through the 8-landmark canonical world with EKF-SLAM.

    ``observation_noise=False`` feeds exact ranges/bearings (the zero-noise
    convergence setting) while keeping R_obs at the nominal sensor values.
    """
    steps = n_steps(duration, dt)
    rng = RngStream(seed)
    landmarks = np.array(SLAM_LANDMARKS)
    truth = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    dead = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    state = EkfSlamState.initial(Pose2D(0.0, 0.0, 0.0))
    r_obs = np.diag([noise.range_std**2, noise.bearing_std**2])

    ts, truth_h, dead_h, est_h, states = [], [], [], [], []
    for k in range(steps):
        truth = motion_unicycle(truth, CIRCLE_V, CIRCLE_OMEGA, dt)
        v_meas, rng = gauss(rng, CIRCLE_V, noise.v_std)
        w_meas, rng = gauss(rng, CIRCLE_OMEGA, noise.omega_std)
        dead = motion_unicycle(dead, v_meas, w_meas, dt)
        observations = []
        for lm_id, lm in enumerate(landmarks):
            z_true = observe_range_bearing(truth.pose, (lm[0], lm[1]), lm_id)
            if z_true.range > max_range:
                continue
            if observation_noise:
                r_meas, rng = gauss(rng, z_true.range, noise.range_std)
                b_meas, rng = gauss(rng, z_true.bearing, noise.bearing_std)
            else:
                r_meas, b_meas = z_true.range, z_true.bearing
            observations.append(RangeBearing(max(r_meas, 1e-6), b_meas, lm_id))
        q_pose = control_noise_cov3(noise, state.belief.mean[2], dt)
        state = ekf_slam_step(state, (v_meas, w_meas), dt, observations, q_pose, r_obs)
        ts.append((k + 1) * dt)
        truth_h.append([truth.pose.x, truth.pose.y, truth.pose.yaw])
        dead_h.append([dead.pose.x, dead.pose.y, dead.pose.yaw])
        est_h.append([state.belief.mean[0], state.belief.mean[1], state.belief.mean[2]])
        states.append(state)
    landmark_est = {lm_id: state.landmark_mean(lm_id) for lm_id in state.registry}
    return SlamRun(
        np.array(ts),
        np.array(truth_h),
        np.array(dead_h),
        np.array(est_h),
        landmarks,
        landmark_est,
        states=states,
    )


def run_fastslam2(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    noise: SensorNoise = SensorNoise(),
    observation_noise: bool = True,
    n_particles: int = 30,
    max_range: float = 15.0,
) -> SlamRun:
    """Same canonical world as run_ekf_slam, estimated with FastSLAM 2.0."""
    steps = n_steps(duration, dt)
    rng = RngStream(seed)
    landmarks = np.array(SLAM_LANDMARKS)
    truth = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    dead = VehicleState(Pose2D(0.0, 0.0, 0.0), CIRCLE_V)
    particles = [
        FastSlamParticle(Pose2D(0.0, 0.0, 0.0), 1.0 / n_particles, {})
        for _ in range(n_particles)
    ]

    ts, truth_h, dead_h, est_h = [], [], [], []
    ess_h, wsum_h = [], []
    for k in range(steps):
        truth = motion_unicycle(truth, CIRCLE_V, CIRCLE_OMEGA, dt)
        v_meas, rng = gauss(rng, CIRCLE_V, noise.v_std)
        w_meas, rng = gauss(rng, CIRCLE_OMEGA, noise.omega_std)
        dead = motion_unicycle(dead, v_meas, w_meas, dt)
        observations = []
        for lm_id, lm in enumerate(landmarks):
            z_true = observe_range_bearing(truth.pose, (lm[0], lm[1]), lm_id)
            if z_true.range > max_range:
                continue
            if observation_noise:
                r_meas, rng = gauss(rng, z_true.range, noise.range_std)
                b_meas, rng = gauss(rng, z_true.bearing, noise.bearing_std)
            else:
                r_meas, b_meas = z_true.range, z_true.bearing
            observations.append(RangeBearing(max(r_meas, 1e-6), b_meas, lm_id))
        particles, rng = fastslam2_step(
            particles, (v_meas, w_meas), dt, observations, noise, rng
        )
        pose = fastslam_estimate(particles)
        weights = np.array([p.weight for p in particles])
        ts.append((k + 1) * dt)
        truth_h.append([truth.pose.x, truth.pose.y, truth.pose.yaw])
        dead_h.append([dead.pose.x, dead.pose.y, dead.pose.yaw])
        est_h.append([pose.x, pose.y, pose.yaw])
        ess_h.append(1.0 / float(np.sum(weights**2)))
        wsum_h.append(float(weights.sum()))
    best = max(particles, key=lambda p: p.weight)
    landmark_est = {lm_id: tuple(lmf.mean) for lm_id, lmf in sorted(best.landmarks.items())}
    return SlamRun(
        np.array(ts),
        np.array(truth_h),
        np.array(dead_h),
        np.array(est_h),
        landmarks,
        landmark_est,
        ess=np.array(ess_h),
        weight_sums=np.array(wsum_h),
    )


# ---------------------------------------------------------------------------
# Planning worlds


def make_planning_world(
    seed: int,
    width: int = 30,
    height: int = 30,
    resolution: float = 1.0,
    density: float = 0.22,
) -> tuple[GridWorld, tuple[int, int], tuple[int, int]]:
    """Random blocked cells with guaranteed-free start/goal and a verified path."""
    rng = RngStream(seed)
    start, goal = (2, 2), (height - 3, width - 3)
    for _ in range(64):
        blocked = np.zeros((height, width), dtype=bool)
        for r in range(height):
            for c in range(width):
                u, rng = uniform(rng)
                blocked[r, c] = u < density
        for cell in (start, goal):
            blocked[cell] = False
        world = GridWorld(width, height, resolution, blocked)
        try:
            plan_grid(world, start, goal, 1.0)
            return world, start, goal
        except Exception:
            continue
    raise InvalidInput("could not draw a solvable planning world")


def rrt_world() -> GridWorld:
    """10 x 10 m arena with two rectangular blocks forcing a detour."""
    blocked = np.zeros((10, 10), dtype=bool)
    blocked[2:7, 4] = True  # vertical wall with a gap at the top
    blocked[8, 1:5] = True
    blocked[4:6, 7:9] = True
    return GridWorld(10, 10, 1.0, blocked)


# ---------------------------------------------------------------------------
# Tracking


def wavy_reference(
    length: float = 130.0, spacing: float = 0.2, amplitude: float = 2.0, target_speed: float = 2.0
) -> ReferencePath:
    xs = np.arange(0.0, length + spacing, spacing)
    ys = amplitude * np.sin(0.12 * xs)
    return ReferencePath.from_xy(xs, ys, target_speed)


@dataclass
class TrackingRun:
    t: np.ndarray
    states: np.ndarray  # (n, 4): x, y, v, yaw
    cross_track: np.ndarray
    speed_error: np.ndarray
    controls: np.ndarray  # (n, 2): accel, omega-or-steer
    reference: ReferencePath


def run_rear_wheel_pid(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    reference: ReferencePath | None = None,
    start_offset: float = 0.0,
    k_theta: float = 1.0,
    k_e: float = 0.5,
    start_speed: float = 0.0,
) -> TrackingRun:
    """Rear-wheel steering feedback plus PID speed control on a unicycle plant.

    Deterministic (the seed is accepted for interface symmetry only).
    """
    steps = n_steps(duration, dt)
    ref = wavy_reference() if reference is None else reference
    wp0 = ref.waypoints[0]
    # Positive offset displaces the start to the left of the path tangent.
    pose = Pose2D(
        wp0.x - start_offset * math.sin(wp0.yaw),
        wp0.y + start_offset * math.cos(wp0.yaw),
        wp0.yaw,
    )
    v = start_speed
    pid = PidState(kp=1.0, ki=0.3, kd=0.0, u_min=-1.0, u_max=1.0)

    ts, states, e_h, ve_h, ctrl = [], [], [], [], []
    for k in range(steps):
        idx, e, theta_e = nearest_path_point(pose, ref)
        wp = ref.waypoints[idx]
        omega = rear_wheel_feedback(v, e, theta_e, wp.curvature, k_theta, k_e)
        accel, pid = pid_step(pid, wp.target_speed - v, dt)
        nxt = motion_unicycle(VehicleState(pose, v), v, omega, dt)
        pose = nxt.pose
        v = v + accel * dt
        ts.append((k + 1) * dt)
        states.append([pose.x, pose.y, v, pose.yaw])
        e_h.append(e)
        ve_h.append(wp.target_speed - v)
        ctrl.append([accel, omega])
    return TrackingRun(
        np.array(ts), np.array(states), np.array(e_h), np.array(ve_h), np.array(ctrl), ref
    )


def run_mpc_tracking(
    seed: int,
    dt: float = 0.1,
    duration: float = 60.0,
    reference: ReferencePath | None = None,
    params: MpcParams = MpcParams(),
    wheelbase: float = 2.0,
    start_offset: float = 0.0,
) -> TrackingRun:
    """Iterative linear MPC driving a bicycle plant along the wavy reference.

    Deterministic; the previous solution (shifted) warm-starts each solve.
    """
    steps = n_steps(duration, dt)
    ref = wavy_reference() if reference is None else reference
    wp0 = ref.waypoints[0]
    pose = Pose2D(
        wp0.x - start_offset * math.sin(wp0.yaw),
        wp0.y + start_offset * math.cos(wp0.yaw),
        wp0.yaw,
    )
    v = 0.0
    u_prev = None

    ts, states, e_h, ve_h, ctrl = [], [], [], [], []
    for k in range(steps):
        idx, e, _ = nearest_path_point(pose, ref)
        window = reference_window(ref, idx, params.horizon)
        state_vec = (pose.x, pose.y, v, pose.yaw)
        accel, steer, _ = mpc_track_step(
            state_vec, window, params, wheelbase, dt, u_init=u_prev
        )
        # Constant-input warm start for the next solve.
        u_prev = np.tile([accel, steer], (params.horizon, 1))
        nxt = motion_bicycle(VehicleState(pose, v), accel, steer, wheelbase, dt)
        pose, v = nxt.pose, nxt.v
        wp = ref.waypoints[idx]
        ts.append((k + 1) * dt)
        states.append([pose.x, pose.y, v, pose.yaw])
        e_h.append(e)
        ve_h.append(wp.target_speed - v)
        ctrl.append([accel, steer])
    return TrackingRun(
        np.array(ts), np.array(states), np.array(e_h), np.array(ve_h), np.array(ctrl), ref
    )
