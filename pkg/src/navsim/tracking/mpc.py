"""Iterative linear MPC for the kinematic bicycle over the state (x, y, v, yaw).

Each outer iteration rolls the current input sequence through the nonlinear
model, linearizes along that rollout, and solves the condensed constrained
QP with the ADMM solver until the inputs stop moving.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from navsim.core.angles import normalize_angle
from navsim.core.models import Pose2D, VehicleState, motion_bicycle
from navsim.errors import InvalidInput
from navsim.tracking.path import ReferencePath
from navsim.tracking.qp import AdmmParams, Qp, qp_solve_admm

_DEFAULT_QP = AdmmParams(eps=1e-6, max_iter=20000)


@dataclass(frozen=True)
class MpcParams:
    """Horizon, weights and bounds; defaults sized so constraints activate at demo scale."""

    horizon: int = 5
    q: np.ndarray = field(default_factory=lambda: np.diag([1.0, 1.0, 0.5, 0.5]))
    qf: np.ndarray = field(default_factory=lambda: np.diag([1.0, 1.0, 0.5, 0.5]))
    r: np.ndarray = field(default_factory=lambda: np.diag([0.01, 0.01]))
    rd: np.ndarray = field(default_factory=lambda: np.diag([0.01, 1.0]))
    a_max: float = 1.0
    steer_max: float = 0.44
    dsteer_max: float = 0.52
    max_outer_iters: int = 3
    du_tol: float = 0.1

    def __post_init__(self):
        if self.horizon < 1:
            raise InvalidInput(f"horizon must be >= 1, got {self.horizon}")
        if not (self.a_max > 0 and self.steer_max > 0 and self.dsteer_max > 0):
            raise InvalidInput("input bounds must be positive")
        if self.steer_max >= math.pi / 2 - 1e-6:
            raise InvalidInput("steer_max must stay below pi/2")
        for name in ("q", "qf", "r", "rd"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def linearize_bicycle(
    op_state, op_steer: float, wheelbase: float, dt: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """First-order expansion of the discrete bicycle map: z+ ~ A z + B u + c.

    ``op_state`` is (x, y, v, yaw) and u = (accel, steer). The expansion is
    exact at the operating point (acceleration enters linearly, so it is
    exact in accel everywhere).
    """
    x, y, v, yaw = (float(s) for s in op_state)
    if not dt > 0:
        raise InvalidInput(f"dt must be positive, got {dt}")
    if not wheelbase > 0:
        raise InvalidInput(f"wheelbase must be positive, got {wheelbase}")
    if abs(op_steer) > math.pi / 2 - 1e-6:
        raise InvalidInput(f"|steer| must be <= pi/2 - 1e-6, got {op_steer}")
    cos_y, sin_y = math.cos(yaw), math.sin(yaw)
    tan_s = math.tan(op_steer)
    a = np.array(
        [
            [1.0, 0.0, cos_y * dt, -v * sin_y * dt],
            [0.0, 1.0, sin_y * dt, v * cos_y * dt],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, tan_s / wheelbase * dt, 1.0],
        ]
    )
    b = np.array(
        [
            [0.0, 0.0],
            [0.0, 0.0],
            [dt, 0.0],
            [0.0, v * dt / (wheelbase * math.cos(op_steer) ** 2)],
        ]
    )
    f0 = np.array(
        [
            x + v * cos_y * dt,
            y + v * sin_y * dt,
            v,
            yaw + v * tan_s / wheelbase * dt,
        ]
    )
    c = f0 - a @ np.array([x, y, v, yaw]) - b @ np.array([0.0, op_steer])
    return a, b, c


def reference_window(ref: ReferencePath, start_index: int, horizon: int) -> np.ndarray:
    """(horizon+1, 4) window of (x, y, target_speed, yaw), clamped at the path end."""
    rows = []
    for t in range(horizon + 1):
        wp = ref.waypoints[min(start_index + t, len(ref) - 1)]
        rows.append([wp.x, wp.y, wp.target_speed, wp.yaw])
    return np.array(rows)


def _rollout(z0: np.ndarray, u_seq: np.ndarray, wheelbase: float, dt: float) -> np.ndarray:
    """Nonlinear rollout keeping yaw continuous (no wrap jumps across steps)."""
    states = np.empty((u_seq.shape[0] + 1, 4))
    states[0] = z0
    for t, (accel, steer) in enumerate(u_seq):
        x, y, v, yaw = states[t]
        vs = motion_bicycle(VehicleState(Pose2D(x, y, yaw), v), accel, steer, wheelbase, dt)
        inc = normalize_angle(vs.pose.yaw - Pose2D(x, y, yaw).yaw)
        states[t + 1] = (vs.pose.x, vs.pose.y, vs.v, yaw + inc)
    return states


def _condense(z0, u_seq, ref, p, wheelbase, dt):
    """Linearize along the rollout and assemble the condensed QP over the inputs."""
    t_hor = p.horizon
    states = _rollout(z0, u_seq, wheelbase, dt)
    phi = np.empty((t_hor + 1, 4))
    phi[0] = z0
    gamma = np.zeros((t_hor + 1, 4, 2 * t_hor))
    for t in range(t_hor):
        a, b, c = linearize_bicycle(states[t], u_seq[t, 1], wheelbase, dt)
        phi[t + 1] = a @ phi[t] + c
        gamma[t + 1] = a @ gamma[t]
        gamma[t + 1][:, 2 * t : 2 * t + 2] += b
    # Stage weights on states 1..T-1, terminal weight on T.
    q_bar = np.zeros((4 * t_hor, 4 * t_hor))
    for t in range(1, t_hor):
        q_bar[4 * (t - 1) : 4 * t, 4 * (t - 1) : 4 * t] = p.q
    q_bar[4 * (t_hor - 1) :, 4 * (t_hor - 1) :] = p.qf
    g_stack = gamma[1:].reshape(4 * t_hor, 2 * t_hor)
    offset = (phi[1:] - ref[1:]).reshape(4 * t_hor)

    r_bar = np.zeros((2 * t_hor, 2 * t_hor))
    for t in range(t_hor):
        r_bar[2 * t : 2 * t + 2, 2 * t : 2 * t + 2] = p.r
    p_qp = 2.0 * (g_stack.T @ q_bar @ g_stack + r_bar)
    q_qp = 2.0 * (g_stack.T @ q_bar @ offset)
    if t_hor > 1:
        diff = np.zeros((2 * (t_hor - 1), 2 * t_hor))
        rd_bar = np.zeros((2 * (t_hor - 1), 2 * (t_hor - 1)))
        for t in range(t_hor - 1):
            diff[2 * t : 2 * t + 2, 2 * t : 2 * t + 2] = -np.eye(2)
            diff[2 * t : 2 * t + 2, 2 * t + 2 : 2 * t + 4] = np.eye(2)
            rd_bar[2 * t : 2 * t + 2, 2 * t : 2 * t + 2] = p.rd
        p_qp += 2.0 * diff.T @ rd_bar @ diff
    p_qp = 0.5 * (p_qp + p_qp.T)

    box = np.eye(2 * t_hor)
    lo = np.tile([-p.a_max, -p.steer_max], t_hor)
    hi = np.tile([p.a_max, p.steer_max], t_hor)
    if t_hor > 1:
        dsteer = np.zeros((t_hor - 1, 2 * t_hor))
        for t in range(t_hor - 1):
            dsteer[t, 2 * t + 1] = -1.0
            dsteer[t, 2 * t + 3] = 1.0
        a_con = np.vstack([box, dsteer])
        lo = np.concatenate([lo, np.full(t_hor - 1, -p.dsteer_max * dt)])
        hi = np.concatenate([hi, np.full(t_hor - 1, p.dsteer_max * dt)])
    else:
        a_con = box
    return Qp(p_qp, q_qp, a_con, lo, hi)


def mpc_track_step(
    state,
    ref_window,
    p: MpcParams,
    wheelbase: float,
    dt: float,
    qp_params: AdmmParams | None = None,
    u_init=None,
) -> tuple[float, float, np.ndarray]:
    """One receding-horizon step; returns (accel, steer, predicted trajectory).

    ``state`` is (x, y, v, yaw) and ``ref_window`` a (horizon+1, 4) array of
    reference rows in the same layout. Iterates linearize/solve until the
    input sequence moves less than ``du_tol`` or ``max_outer_iters`` is hit;
    the returned first input respects all bounds exactly (post-clamped).
    NoConvergence from the QP propagates, carrying its last iterate.
    """
    z0 = np.asarray(state, dtype=float).reshape(4)
    ref = np.array(ref_window, dtype=float)
    t_hor = p.horizon
    if ref.shape != (t_hor + 1, 4):
        raise InvalidInput(f"reference window must be {(t_hor + 1, 4)}, got {ref.shape}")
    qp_params = _DEFAULT_QP if qp_params is None else qp_params

    # Keep reference yaw continuous relative to the current heading.
    ref[0, 3] = z0[3] + normalize_angle(ref[0, 3] - z0[3])
    for t in range(1, t_hor + 1):
        ref[t, 3] = ref[t - 1, 3] + normalize_angle(ref[t, 3] - ref[t - 1, 3])

    if u_init is None:
        u_seq = np.zeros((t_hor, 2))
    else:
        u_seq = np.array(u_init, dtype=float).reshape(t_hor, 2)
        u_seq[:, 0] = np.clip(u_seq[:, 0], -p.a_max, p.a_max)
        u_seq[:, 1] = np.clip(u_seq[:, 1], -p.steer_max, p.steer_max)

    for _ in range(p.max_outer_iters):
        problem = _condense(z0, u_seq, ref, p, wheelbase, dt)
        solution = qp_solve_admm(problem, qp_params, x0=u_seq.reshape(-1))
        new_u = solution.reshape(t_hor, 2)
        new_u[:, 0] = np.clip(new_u[:, 0], -p.a_max, p.a_max)
        new_u[:, 1] = np.clip(new_u[:, 1], -p.steer_max, p.steer_max)
        du = float(np.max(np.abs(new_u - u_seq)))
        u_seq = new_u
        if du < p.du_tol:
            break
    predicted = _rollout(z0, u_seq, wheelbase, dt)
    return float(u_seq[0, 0]), float(u_seq[0, 1]), predicted
