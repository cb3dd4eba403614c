"""Dijkstra / A* search on an 8-connected occupancy grid."""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from navsim.errors import InvalidInput, NoPath

SQRT2 = math.sqrt(2.0)

# 8-connected moves with their step costs (axis 1, diagonal sqrt(2)).
MOVES = (
    (-1, -1, SQRT2),
    (-1, 0, 1.0),
    (-1, 1, SQRT2),
    (0, -1, 1.0),
    (0, 1, 1.0),
    (1, -1, SQRT2),
    (1, 0, 1.0),
    (1, 1, SQRT2),
)


@dataclass(frozen=True)
class GridWorld:
    """Boolean obstacle lattice; blocked[row, col] marks a cell untraversable.

    World coordinates map onto cells as col = floor(x / resolution),
    row = floor(y / resolution), with the world origin at cell (0, 0)'s corner.
    """

    width: int
    height: int
    resolution: float
    blocked: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InvalidInput("world must have positive dimensions")
        if not self.resolution > 0:
            raise InvalidInput(f"resolution must be positive, got {self.resolution}")
        blocked = np.array(self.blocked, dtype=bool)
        if blocked.shape != (self.height, self.width):
            raise InvalidInput(
                f"blocked shape {blocked.shape} does not match (height={self.height}, width={self.width})"
            )
        blocked.setflags(write=False)
        object.__setattr__(self, "blocked", blocked)

    @classmethod
    def open_world(cls, width: int, height: int, resolution: float = 1.0) -> "GridWorld":
        return cls(width, height, resolution, np.zeros((height, width), dtype=bool))

    @property
    def extent(self) -> tuple[float, float]:
        """World-frame (x, y) size."""
        return (self.width * self.resolution, self.height * self.resolution)

    def cell_in_bounds(self, cell: tuple[int, int]) -> bool:
        return 0 <= cell[0] < self.height and 0 <= cell[1] < self.width

    def cell_free(self, cell: tuple[int, int]) -> bool:
        return self.cell_in_bounds(cell) and not self.blocked[cell[0], cell[1]]

    def point_free(self, x: float, y: float) -> bool:
        """True when (x, y) lies inside the extent and on an unblocked cell."""
        ex, ey = self.extent
        if not (0.0 <= x <= ex and 0.0 <= y <= ey):
            return False
        col = min(int(x / self.resolution), self.width - 1)
        row = min(int(y / self.resolution), self.height - 1)
        return not self.blocked[row, col]

    def segment_free(self, a: tuple[float, float], b: tuple[float, float]) -> bool:
        """Collision check by sampling the segment at resolution/2 intervals."""
        length = math.hypot(b[0] - a[0], b[1] - a[1])
        steps = max(1, int(math.ceil(length / (self.resolution / 2.0))))
        for i in range(steps + 1):
            t = i / steps
            if not self.point_free(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])):
                return False
        return True


@dataclass(frozen=True)
class GridPath:
    """Ordered 8-adjacent cells with the summed step cost."""

    cells: tuple
    cost: float

    def __post_init__(self):
        cells = tuple((int(r), int(c)) for r, c in self.cells)
        for a, b in zip(cells, cells[1:]):
            if max(abs(a[0] - b[0]), abs(a[1] - b[1])) != 1:
                raise InvalidInput(f"cells {a} and {b} are not 8-adjacent")
        if abs(path_cost(cells) - self.cost) > 1e-9:
            raise InvalidInput("stored cost does not match the step-cost sum")
        object.__setattr__(self, "cells", cells)


def path_cost(cells) -> float:
    """Sum of unit/diagonal step costs along a cell sequence."""
    total = 0.0
    for a, b in zip(cells, cells[1:]):
        total += SQRT2 if (a[0] != b[0] and a[1] != b[1]) else 1.0
    return total


def plan_grid(
    world: GridWorld,
    start: tuple[int, int],
    goal: tuple[int, int],
    heuristic_weight: float = 1.0,
) -> GridPath:
    """Optimal 8-connected path via A* (Dijkstra when heuristic_weight = 0).

    The Euclidean heuristic is admissible for the unit/diagonal metric, so any
    weight <= 1 returns an optimal-cost path. Ties in the priority queue break
    toward the smaller (row, col) cell, making expansions deterministic.
    """
    if heuristic_weight < 0:
        raise InvalidInput(f"heuristic weight must be >= 0, got {heuristic_weight}")
    start = (int(start[0]), int(start[1]))
    goal = (int(goal[0]), int(goal[1]))
    for name, cell in (("start", start), ("goal", goal)):
        if not world.cell_in_bounds(cell):
            raise InvalidInput(f"{name} cell {cell} out of bounds")
        if world.blocked[cell[0], cell[1]]:
            raise InvalidInput(f"{name} cell {cell} is blocked")

    def heuristic(cell):
        return heuristic_weight * math.hypot(cell[0] - goal[0], cell[1] - goal[1])

    g_cost = {start: 0.0}
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    closed: set[tuple[int, int]] = set()
    heap = [(heuristic(start), start[0], start[1])]
    while heap:
        _, r, c = heapq.heappop(heap)
        cell = (r, c)
        if cell in closed:
            continue
        closed.add(cell)
        if cell == goal:
            cells = [cell]
            while cells[-1] != start:
                cells.append(parent[cells[-1]])
            cells.reverse()
            return GridPath(tuple(cells), g_cost[goal])
        base = g_cost[cell]
        for dr, dc, step in MOVES:
            nxt = (r + dr, c + dc)
            if not world.cell_free(nxt) or nxt in closed:
                continue
            tentative = base + step
            if tentative < g_cost.get(nxt, math.inf) - 1e-12:
                g_cost[nxt] = tentative
                parent[nxt] = cell
                heapq.heappush(heap, (tentative + heuristic(nxt), nxt[0], nxt[1]))
    raise NoPath(f"goal {goal} unreachable from {start}")
