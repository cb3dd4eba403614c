"""Log-odds occupancy grid built from range scans via 2D ray casting."""

import math
from dataclasses import dataclass

import numpy as np

from navsim.core.models import Pose2D
from navsim.errors import InvalidInput, OutOfBounds

# Inverse sensor model: a hit carries p=0.7, traversed free space p=0.3.
L_OCC = math.log(0.7 / 0.3)
L_FREE = math.log(0.3 / 0.7)
LOG_ODDS_CLAMP = 5.0


@dataclass(frozen=True)
class OccupancyGrid:
    """Log-odds lattice; cells[i, j] covers the cell whose lower-left corner is
    origin + (i, j) * resolution. Values are clamped to [-5, 5]."""

    width: int
    height: int
    resolution: float
    origin: tuple[float, float]
    cells: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InvalidInput("grid must have positive dimensions")
        if not self.resolution > 0:
            raise InvalidInput(f"resolution must be positive, got {self.resolution}")
        cells = np.array(self.cells, dtype=float)
        if cells.shape != (self.width, self.height):
            raise InvalidInput(
                f"cells shape {cells.shape} does not match ({self.width}, {self.height})"
            )
        if np.any(np.abs(cells) > LOG_ODDS_CLAMP + 1e-12):
            raise InvalidInput("log-odds outside the clamp range [-5, 5]")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @classmethod
    def empty(cls, width: int, height: int, resolution: float, origin=(0.0, 0.0)):
        return cls(width, height, resolution, origin, np.zeros((width, height)))

    def world_to_cell(self, x: float, y: float) -> tuple[int, int]:
        return (
            int(math.floor((x - self.origin[0]) / self.resolution)),
            int(math.floor((y - self.origin[1]) / self.resolution)),
        )

    def in_bounds(self, cell: tuple[int, int]) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height

    def probabilities(self) -> np.ndarray:
        """Occupancy probability per cell, 1 / (1 + exp(-logodds))."""
        return 1.0 / (1.0 + np.exp(-self.cells))

    def to_pgm(self) -> str:
        """Plain-text PGM (P2): 255 = occupancy probability 1.0.

        Raster rows run top to bottom, i.e. row r is grid row j = height-1-r,
        so the image displays with +y up. The comment line records the cell
        size and the world position of the lower-left corner.
        """
        probs = self.probabilities()
        lines = [
            "P2",
            f"# resolution {self.resolution:.17g} origin {self.origin[0]:.17g} {self.origin[1]:.17g}",
            f"{self.width} {self.height}",
            "255",
        ]
        for j in range(self.height - 1, -1, -1):
            lines.append(" ".join(str(int(round(255.0 * probs[i, j]))) for i in range(self.width)))
        return "\n".join(lines) + "\n"


def _line_cells(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    """8-connected Bresenham run of max(|di|, |dj|) + 1 cells from a to b.

    Computed from the lexicographically smaller endpoint so the reverse ray
    visits exactly the same cells.
    """
    swapped = b < a
    if swapped:
        a, b = b, a
    di = b[0] - a[0]
    dj = b[1] - a[1]
    n = max(abs(di), abs(dj))
    if n == 0:
        return [a]
    # Rounded interpolation in exact integer arithmetic: floor(k*d/n + 1/2).
    cells = [
        (a[0] + (2 * k * di + n) // (2 * n), a[1] + (2 * k * dj + n) // (2 * n))
        for k in range(n + 1)
    ]
    if swapped:
        cells.reverse()
    return cells


def bresenham_ray(
    start: tuple[int, int], end: tuple[int, int], shape: tuple[int, int]
) -> list[tuple[int, int]]:
    """Cells crossed by a ray between two in-bounds cells, endpoints included."""
    width, height = shape
    for cell in (start, end):
        if not (0 <= cell[0] < width and 0 <= cell[1] < height):
            raise OutOfBounds(f"cell {cell} outside grid {shape}")
    return _line_cells((int(start[0]), int(start[1])), (int(end[0]), int(end[1])))


def grid_update_scan(
    g: OccupancyGrid,
    sensor_pose: Pose2D,
    scan: list[tuple[float, float]],
    max_range: float,
) -> OccupancyGrid:
    """Fold one scan of (beam angle, range) pairs into the grid.

    Beam angles are relative to the sensor yaw. Cells strictly before the
    endpoint take the free-space decrement; the endpoint cell takes the hit
    increment only when range < max_range (a max-range beam marks no
    obstacle). Cells the ray crosses outside the grid are ignored. Log-odds
    are clamped to [-5, 5] once the whole scan is applied.
    """
    sensor_cell = g.world_to_cell(sensor_pose.x, sensor_pose.y)
    if not g.in_bounds(sensor_cell):
        raise OutOfBounds(f"sensor pose cell {sensor_cell} outside the grid")
    cells = np.array(g.cells)
    for angle, rng in scan:
        if not (0 < rng <= max_range):
            raise InvalidInput(f"beam range must lie in (0, max_range], got {rng}")
        heading = sensor_pose.yaw + angle
        end = g.world_to_cell(
            sensor_pose.x + rng * math.cos(heading),
            sensor_pose.y + rng * math.sin(heading),
        )
        ray = _line_cells(sensor_cell, end)
        for cell in ray[:-1]:
            if g.in_bounds(cell):
                cells[cell] += L_FREE
        if rng < max_range and g.in_bounds(ray[-1]):
            cells[ray[-1]] += L_OCC
    np.clip(cells, -LOG_ODDS_CLAMP, LOG_ODDS_CLAMP, out=cells)
    return OccupancyGrid(g.width, g.height, g.resolution, g.origin, cells)
