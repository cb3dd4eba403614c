"""LQR-RRT*: RRT* whose distance metric and steering come from an LQR on the
2D double integrator (positions integrate velocities, inputs are accelerations)."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from navsim.core.linalg import solve_dare
from navsim.core.rng import RngStream, uniform
from navsim.errors import InvalidInput, NoPath
from navsim.planning.grid_search import GridWorld
from navsim.planning.tree import PlanTree


@lru_cache(maxsize=8)
def _double_integrator(dt: float):
    """Discrete double-integrator matrices and their infinite-horizon LQR pieces."""
    a = np.array(
        [
            [1.0, 0.0, dt, 0.0],
            [0.0, 1.0, 0.0, dt],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    b = np.array([[0.0, 0.0], [0.0, 0.0], [dt, 0.0], [0.0, dt]])
    p, k = solve_dare(a, b, np.eye(4), np.eye(2))
    return a, b, p, k, a - b @ k


def lqr_cost_metric(dt: float = 0.1) -> np.ndarray:
    """Quadratic form P: the LQR cost-to-go between states is (x1-x0)' P (x1-x0)."""
    return _double_integrator(dt)[2]


def lqr_steer(
    from_state, to_state, horizon: int = 100, dt: float = 0.1
) -> tuple[np.ndarray, float]:
    """Drive the double integrator from one 4-state toward another with u = -K(x - to).

    Returns the visited states (one row per applied step; empty when already
    at the target) and the accumulated cost sum (x-to)'Q(x-to) + u'Ru with
    Q = R = I. Stops early once the infinity-norm error drops below 0.05.
    """
    if horizon < 1:
        raise InvalidInput(f"horizon must be >= 1, got {horizon}")
    _, b, _, k, a_cl = _double_integrator(dt)
    to = np.asarray(to_state, dtype=float)
    err = np.asarray(from_state, dtype=float) - to
    drift = np.array([to[2] * dt, to[3] * dt, 0.0, 0.0])  # (A - I) @ to
    states = []
    cost = 0.0
    for _ in range(horizon):
        if np.max(np.abs(err)) < 0.05:
            break
        u = -k @ err
        cost += float(err @ err + u @ u)
        err = a_cl @ err + drift
        states.append(err + to)
    return (np.array(states) if states else np.empty((0, 4))), cost


@dataclass(frozen=True)
class LqrRrtParams:
    """Near-set ``step``/``gamma`` are in LQR cost-to-go units (the lifted metric)."""

    max_iter: int = 1500
    goal_sample_rate: float = 0.1
    step: float = 40.0
    gamma: float = 120.0
    horizon: int = 100
    dt: float = 0.1
    vmax: float = 2.0
    reach_tol: float = 0.05
    max_near: int = 15

    def __post_init__(self):
        if self.max_iter < 1 or self.horizon < 1:
            raise InvalidInput("max_iter and horizon must be >= 1")
        if not 0.0 <= self.goal_sample_rate < 1.0:
            raise InvalidInput("goal_sample_rate must lie in [0, 1)")


def _points_free(world: GridWorld, pts: np.ndarray) -> bool:
    if pts.size == 0:
        return True
    x, y = pts[:, 0], pts[:, 1]
    ex, ey = world.extent
    if np.any((x < 0) | (x > ex) | (y < 0) | (y > ey)):
        return False
    col = np.minimum((x / world.resolution).astype(int), world.width - 1)
    row = np.minimum((y / world.resolution).astype(int), world.height - 1)
    return not np.any(world.blocked[row, col])


def _trajectory_free(world: GridWorld, start: np.ndarray, traj: np.ndarray) -> bool:
    """Collision check of a steer trajectory, subsampled to resolution/2 spacing."""
    pts = np.vstack([start[None, :2], traj[:, :2]]) if traj.size else start[None, :2]
    gaps = np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))
    max_gap = float(gaps.max()) if gaps.size else 0.0
    if max_gap > world.resolution / 2.0:
        k = int(math.ceil(max_gap / (world.resolution / 2.0)))
        t = np.linspace(0.0, 1.0, k + 1)[1:, None]
        fine = pts[:-1, None, :] + t[None, :, :] * (pts[1:, None, :] - pts[:-1, None, :])
        pts = np.vstack([pts[:1], fine.reshape(-1, 2)])
    return _points_free(world, pts)


def lqr_rrt_star_plan(
    world: GridWorld,
    start: tuple[float, float],
    goal: tuple[float, float],
    params: LqrRrtParams,
    rng: RngStream,
    on_iteration=None,
) -> tuple[PlanTree, list[tuple[float, float]]]:
    """RRT* over (x, y, vx, vy) with LQR-cost distances and LQR-steered edges.

    Start and goal are positions, lifted to rest states. Edges are lqr_steer
    trajectories that must reach their target within ``reach_tol`` (inf-norm)
    and pass the resolution/2 collision sampling; edge costs are the steer
    costs. The same choose-parent/rewire structure and best-cost monotonicity
    as rrt_star_plan apply. Returns the tree plus the (x, y) waypoints of the
    concatenated winning trajectories.
    """
    start_state = np.array([float(start[0]), float(start[1]), 0.0, 0.0])
    goal_state = np.array([float(goal[0]), float(goal[1]), 0.0, 0.0])
    if not world.point_free(start_state[0], start_state[1]):
        raise InvalidInput(f"start {start} is inside an obstacle or out of bounds")
    tree = PlanTree(start_state)
    if np.array_equal(start_state, goal_state):
        return tree, [tuple(start_state[:2])]

    p_metric = lqr_cost_metric(params.dt)
    extent = world.extent
    edge_trajs: list[np.ndarray] = [np.empty((0, 4))]
    goal_links: dict[int, tuple[float, np.ndarray]] = {}

    def metric_to(states: np.ndarray, target: np.ndarray) -> np.ndarray:
        diff = states - target
        return np.einsum("ni,ij,nj->n", diff, p_metric, diff)

    def best_solution() -> tuple[float, int | None]:
        best_cost, best_node = math.inf, None
        for idx, (tail, _) in goal_links.items():
            cost = tree.nodes[idx].cost + tail
            if cost < best_cost:
                best_cost, best_node = cost, idx
        return best_cost, best_node

    for _ in range(params.max_iter):
        pick, rng = uniform(rng)
        if pick < params.goal_sample_rate:
            sample = goal_state.copy()
        else:
            draws = np.empty(4)
            for i in range(4):
                draws[i], rng = uniform(rng)
            sample = np.array(
                [
                    draws[0] * extent[0],
                    draws[1] * extent[1],
                    (2.0 * draws[2] - 1.0) * params.vmax,
                    (2.0 * draws[3] - 1.0) * params.vmax,
                ]
            )

        states = tree.states()
        dists = metric_to(states, sample)
        nearest = int(np.argmin(dists))
        traj, cost = lqr_steer(states[nearest], sample, params.horizon, params.dt)
        if traj.size == 0:
            if on_iteration is not None:
                on_iteration(tree, best_solution()[0])
            continue
        new_state = traj[-1]
        if not _trajectory_free(world, states[nearest], traj):
            if on_iteration is not None:
                on_iteration(tree, best_solution()[0])
            continue

        n = len(tree)
        radius = min(params.step * 2.0, params.gamma * math.sqrt(math.log(n) / n)) if n >= 2 else 0.0
        new_dists = metric_to(states, new_state)
        near_idx = [int(i) for i in np.argsort(new_dists) if new_dists[i] <= radius]
        near_idx = near_idx[: params.max_near]
        if nearest not in near_idx:
            near_idx.append(nearest)

        parent, parent_edge, parent_traj = nearest, cost, traj
        parent_cost = tree.nodes[nearest].cost + cost
        for idx in near_idx:
            if idx == nearest:
                continue
            cand_traj, cand_cost = lqr_steer(states[idx], new_state, params.horizon, params.dt)
            if cand_traj.size == 0 or np.max(np.abs(cand_traj[-1] - new_state)) >= params.reach_tol:
                continue
            total = tree.nodes[idx].cost + cand_cost
            if total < parent_cost - 1e-9 and _trajectory_free(world, states[idx], cand_traj):
                parent, parent_edge, parent_traj, parent_cost = idx, cand_cost, cand_traj, total
        new_idx = tree.add(new_state, parent, parent_edge)
        edge_trajs.append(parent_traj)

        for idx in near_idx:
            if idx in (parent, new_idx):
                continue
            back_traj, back_cost = lqr_steer(new_state, states[idx], params.horizon, params.dt)
            if back_traj.size == 0 or np.max(np.abs(back_traj[-1] - states[idx])) >= params.reach_tol:
                continue
            if parent_cost + back_cost < tree.nodes[idx].cost - 1e-9 and _trajectory_free(
                world, new_state, back_traj
            ):
                tree.rewire(idx, new_idx, back_cost)
                edge_trajs[idx] = back_traj

        gtraj, gcost = lqr_steer(new_state, goal_state, params.horizon, params.dt)
        reached = gtraj.size == 0 or np.max(np.abs(gtraj[-1] - goal_state)) < params.reach_tol
        if reached and _trajectory_free(world, new_state, gtraj):
            goal_links[new_idx] = (gcost, gtraj)

        if on_iteration is not None:
            on_iteration(tree, best_solution()[0])

    best_cost, best_node = best_solution()
    if best_node is None:
        raise NoPath(f"no goal connection within {params.max_iter} iterations")
    waypoints = [tuple(start_state[:2])]
    for idx in tree.path_to(best_node)[1:]:
        waypoints.extend(tuple(row[:2]) for row in edge_trajs[idx])
    waypoints.extend(tuple(row[:2]) for row in goal_links[best_node][1])
    waypoints.append(tuple(goal_state[:2]))
    return tree, waypoints
