"""Occupancy-grid mapping with ray casting, plus k-means object clustering."""

from navsim.mapping.grid import (
    L_FREE,
    L_OCC,
    LOG_ODDS_CLAMP,
    OccupancyGrid,
    bresenham_ray,
    grid_update_scan,
)
from navsim.mapping.kmeans import Clustering, kmeans_cluster

__all__ = [
    "Clustering",
    "L_FREE",
    "L_OCC",
    "LOG_ODDS_CLAMP",
    "OccupancyGrid",
    "bresenham_ray",
    "grid_update_scan",
    "kmeans_cluster",
]
