"""Potential-field planning by greedy descent on a discretized 8-neighborhood."""

import math
from dataclasses import dataclass

from navsim.errors import InvalidInput, LocalMinimum

_NEIGHBORS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))
_MAX_STEPS = 10_000


@dataclass(frozen=True)
class PotentialParams:
    k_att: float
    k_rep: float
    rho0: float  # repulsion cutoff distance
    resolution: float  # descent lattice pitch

    def __post_init__(self):
        for name in ("k_att", "k_rep", "rho0", "resolution"):
            if not getattr(self, name) > 0:
                raise InvalidInput(f"{name} must be positive, got {getattr(self, name)}")


def potential_value(q, goal, obstacles, p: PotentialParams) -> float:
    """U(q) = 0.5*k_att*d(q,goal)^2 + sum of 0.5*k_rep*(1/rho - 1/rho0)^2 inside the cutoff."""
    u = 0.5 * p.k_att * ((q[0] - goal[0]) ** 2 + (q[1] - goal[1]) ** 2)
    for ox, oy in obstacles:
        rho = math.hypot(q[0] - ox, q[1] - oy)
        if rho <= 1e-12:
            return math.inf
        if rho <= p.rho0:
            u += 0.5 * p.k_rep * (1.0 / rho - 1.0 / p.rho0) ** 2
    return u


def plan_potential_field(
    obstacles, start, goal, p: PotentialParams
) -> list[tuple[float, float]]:
    """Greedy descent on the lattice anchored at ``start`` until the goal cell.

    Every step moves to the minimum-potential 8-neighbor and must strictly
    decrease the sampled potential; a non-improving best neighbor or a return
    to any of the previous 3 cells raises LocalMinimum.
    """
    start = (float(start[0]), float(start[1]))
    goal = (float(goal[0]), float(goal[1]))
    if start == goal:
        return [start]
    obstacles = [(float(ox), float(oy)) for ox, oy in obstacles]

    def world(cell):
        return (start[0] + cell[0] * p.resolution, start[1] + cell[1] * p.resolution)

    goal_cell = (
        round((goal[0] - start[0]) / p.resolution),
        round((goal[1] - start[1]) / p.resolution),
    )
    current = (0, 0)
    current_u = potential_value(start, goal, obstacles, p)
    path = [start]
    recent: list[tuple[int, int]] = []
    for _ in range(_MAX_STEPS):
        if current == goal_cell:
            return path
        best_cell = None
        best_u = math.inf
        for di, dj in _NEIGHBORS:
            cell = (current[0] + di, current[1] + dj)
            u = potential_value(world(cell), goal, obstacles, p)
            if u < best_u:
                best_u = u
                best_cell = cell
        if best_u >= current_u:
            raise LocalMinimum(f"no descending neighbor at {world(current)}")
        if best_cell in recent:
            raise LocalMinimum(f"oscillation detected at {world(best_cell)}")
        recent.append(current)
        if len(recent) > 3:
            recent.pop(0)
        current = best_cell
        current_u = best_u
        path.append(world(current))
    raise LocalMinimum("descent exceeded the step budget without reaching the goal")
