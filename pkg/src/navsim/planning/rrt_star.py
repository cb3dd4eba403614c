"""RRT* in the plane with rewiring and goal-bias sampling."""

import math
from dataclasses import dataclass

import numpy as np

from navsim.core.rng import RngStream, uniform
from navsim.errors import InvalidInput, NoPath
from navsim.planning.grid_search import GridWorld
from navsim.planning.tree import PlanTree


@dataclass(frozen=True)
class RrtParams:
    step: float = 1.0
    goal_sample_rate: float = 0.05
    max_iter: int = 2000
    gamma: float = 20.0

    def __post_init__(self):
        if not (self.step > 0 and self.gamma > 0 and self.max_iter >= 1):
            raise InvalidInput("step, gamma must be positive and max_iter >= 1")
        if not 0.0 <= self.goal_sample_rate < 1.0:
            raise InvalidInput("goal_sample_rate must lie in [0, 1)")


def _near_radius(params: RrtParams, n: int) -> float:
    if n < 2:
        return 0.0
    return min(params.step * 2.0, params.gamma * math.sqrt(math.log(n) / n))


def rrt_star_plan(
    world: GridWorld,
    start: tuple[float, float],
    goal: tuple[float, float],
    params: RrtParams,
    rng: RngStream,
    on_iteration=None,
) -> tuple[PlanTree, list[tuple[float, float]]]:
    """Plan a collision-free path from start to goal with RRT*.

    Sampling is uniform over the world extent with the goal substituted at
    ``goal_sample_rate``. New states extend the nearest node by at most
    ``step``, pick the cheapest collision-free parent in the shrinking near
    set, and then rewire that set. A node within ``step`` of the goal with a
    free final segment registers a solution; the best registered cost is
    non-increasing over iterations. ``on_iteration(tree, best_cost)`` runs
    after every iteration when given. Raises NoPath if nothing connects
    within ``max_iter`` iterations.
    """
    start = (float(start[0]), float(start[1]))
    goal = (float(goal[0]), float(goal[1]))
    if not world.point_free(*start):
        raise InvalidInput(f"start {start} is inside an obstacle or out of bounds")
    extent = world.extent

    tree = PlanTree(start)
    goal_links: dict[int, float] = {}  # node index -> verified edge cost to goal

    def best_solution() -> tuple[float, int | None]:
        best_cost, best_node = math.inf, None
        for idx, tail in goal_links.items():
            cost = tree.nodes[idx].cost + tail
            if cost < best_cost:
                best_cost, best_node = cost, idx
        return best_cost, best_node

    for _ in range(params.max_iter):
        pick, rng = uniform(rng)
        if pick < params.goal_sample_rate:
            sample = goal
        else:
            ux, rng = uniform(rng)
            uy, rng = uniform(rng)
            sample = (ux * extent[0], uy * extent[1])

        states = tree.states()
        deltas = states - np.array(sample)
        dists = np.hypot(deltas[:, 0], deltas[:, 1])
        nearest = int(np.argmin(dists))
        near_state = states[nearest]
        gap = float(dists[nearest])
        if gap < 1e-12:
            if on_iteration is not None:
                on_iteration(tree, best_solution()[0])
            continue
        scale = min(1.0, params.step / gap)
        new = (
            near_state[0] + scale * (sample[0] - near_state[0]),
            near_state[1] + scale * (sample[1] - near_state[1]),
        )
        if not (world.point_free(*new) and world.segment_free(tuple(near_state), new)):
            if on_iteration is not None:
                on_iteration(tree, best_solution()[0])
            continue

        radius = _near_radius(params, len(tree))
        new_dists = np.hypot(states[:, 0] - new[0], states[:, 1] - new[1])
        near_idx = [int(i) for i in np.flatnonzero(new_dists <= radius)]
        if nearest not in near_idx:
            near_idx.append(nearest)

        parent = nearest
        parent_edge = float(new_dists[nearest])
        parent_cost = tree.nodes[nearest].cost + parent_edge
        for idx in near_idx:
            if idx == nearest:
                continue
            edge = float(new_dists[idx])
            cost = tree.nodes[idx].cost + edge
            if cost < parent_cost - 1e-12 and world.segment_free(tuple(states[idx]), new):
                parent, parent_edge, parent_cost = idx, edge, cost
        new_idx = tree.add(new, parent, parent_edge)

        for idx in near_idx:
            if idx in (parent, new_idx):
                continue
            edge = float(new_dists[idx])
            if parent_cost + edge < tree.nodes[idx].cost - 1e-12 and world.segment_free(
                new, tuple(states[idx])
            ):
                tree.rewire(idx, new_idx, edge)

        goal_gap = math.hypot(goal[0] - new[0], goal[1] - new[1])
        if goal_gap <= params.step and world.segment_free(new, goal):
            goal_links[new_idx] = goal_gap

        if on_iteration is not None:
            on_iteration(tree, best_solution()[0])

    best_cost, best_node = best_solution()
    if best_node is None:
        raise NoPath(f"no goal connection within {params.max_iter} iterations")
    waypoints = [tuple(tree.nodes[i].state) for i in tree.path_to(best_node)]
    waypoints.append(goal)
    return tree, waypoints
