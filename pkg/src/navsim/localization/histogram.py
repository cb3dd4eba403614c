"""Histogram-filter localization over a 2D (x, y) grid with known heading."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from navsim.errors import DegenerateBelief, InvalidInput


@dataclass(frozen=True)
class HistogramBelief:
    """Cell probabilities over (x, y); grid[i, j] covers the cell with lower-left
    corner origin + (i, j) * resolution."""

    grid: np.ndarray
    resolution: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        if grid.ndim != 2:
            raise InvalidInput(f"belief grid must be 2D, got shape {grid.shape}")
        if np.any(grid < 0) or not np.all(np.isfinite(grid)):
            raise InvalidInput("belief grid entries must be finite and non-negative")
        if abs(grid.sum() - 1.0) > 1e-9:
            raise InvalidInput(f"belief mass must be 1 +- 1e-9, got {grid.sum()!r}")
        if not self.resolution > 0:
            raise InvalidInput(f"resolution must be positive, got {self.resolution}")
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @classmethod
    def uniform(cls, nx: int, ny: int, resolution: float, origin=(0.0, 0.0)) -> "HistogramBelief":
        return cls(np.full((nx, ny), 1.0 / (nx * ny)), resolution, origin)

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """World coordinates of every cell center, as broadcastable (nx,1)/(1,ny) arrays."""
        nx, ny = self.grid.shape
        cx = self.origin[0] + (np.arange(nx) + 0.5) * self.resolution
        cy = self.origin[1] + (np.arange(ny) + 0.5) * self.resolution
        return cx[:, None], cy[None, :]

    def mean_position(self) -> tuple[float, float]:
        """Probability-weighted mean of the cell centers."""
        cx, cy = self.cell_centers()
        return float(np.sum(self.grid * cx)), float(np.sum(self.grid * cy))


def motion_kernel(std: float) -> np.ndarray:
    """Discrete Gaussian blur kernel truncated at +-3*std cells, normalized to sum 1."""
    if std < 0:
        raise InvalidInput(f"motion std must be >= 0, got {std}")
    if std == 0:
        return np.ones((1, 1))
    radius = int(math.ceil(3.0 * std))
    offsets = np.arange(-radius, radius + 1)
    d2 = offsets[:, None] ** 2 + offsets[None, :] ** 2
    kernel = np.exp(-d2 / (2.0 * std * std))
    return kernel / kernel.sum()


def hf_predict(h: HistogramBelief, u: tuple[int, int], motion_std: float) -> HistogramBelief:
    """Shift the belief by ``u`` cells and blur with the truncated Gaussian kernel.

    Shift and blur form one transition (mass may blur back into the grid even
    when its shifted center falls outside); whatever still lands outside is
    clipped and the result renormalized.
    """
    kernel = motion_kernel(motion_std)
    radius = kernel.shape[0] // 2
    nx, ny = h.grid.shape
    if radius > min(nx, ny):
        raise InvalidInput(f"kernel radius {radius} exceeds grid extent {h.grid.shape}")
    dx, dy = int(u[0]), int(u[1])
    full = convolve2d(h.grid, kernel, mode="full")
    # out[t] = full[t + radius - shift], zero where that index leaves the full array
    out = np.zeros_like(h.grid)
    src_x = np.arange(nx) + radius - dx
    src_y = np.arange(ny) + radius - dy
    ok_x = (src_x >= 0) & (src_x < full.shape[0])
    ok_y = (src_y >= 0) & (src_y < full.shape[1])
    out[np.ix_(ok_x, ok_y)] = full[np.ix_(src_x[ok_x], src_y[ok_y])]
    total = out.sum()
    if not total > 0:
        raise DegenerateBelief("all probability mass was shifted off the grid")
    return HistogramBelief(out / total, h.resolution, h.origin)


def hf_update(h: HistogramBelief, landmarks, ranges, obs_std: float) -> HistogramBelief:
    """Multiply in the Gaussian range likelihood of each landmark and renormalize.

    ``landmarks`` is an (M, 2) array of known positions and ``ranges`` the M
    measured distances to them.
    """
    if not obs_std > 0:
        raise InvalidInput(f"obs_std must be positive, got {obs_std}")
    landmarks = np.asarray(landmarks, dtype=float).reshape(-1, 2)
    ranges = np.asarray(ranges, dtype=float).reshape(-1)
    if landmarks.shape[0] != ranges.shape[0]:
        raise InvalidInput("one measured range per landmark is required")
    cx, cy = h.cell_centers()
    posterior = h.grid.copy()
    norm = obs_std * math.sqrt(2.0 * math.pi)
    for (lx, ly), measured in zip(landmarks, ranges):
        dist = np.sqrt((cx - lx) ** 2 + (cy - ly) ** 2)
        posterior *= np.exp(-0.5 * ((measured - dist) / obs_std) ** 2) / norm
    total = posterior.sum()
    if not total > 0:
        raise DegenerateBelief("range likelihood annihilated the belief")
    return HistogramBelief(posterior / total, h.resolution, h.origin)
