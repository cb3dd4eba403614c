"""2D point clustering with k-means++ seeding and Lloyd iterations."""

from dataclasses import dataclass

import numpy as np

from navsim.core.rng import RngStream, uniform
from navsim.errors import InvalidInput


@dataclass(frozen=True)
class Clustering:
    k: int
    centroids: np.ndarray  # (k, 2)
    assignment: np.ndarray  # (n,) cluster index per point
    sse: float

    def __post_init__(self):
        centroids = np.array(self.centroids, dtype=float)
        assignment = np.array(self.assignment, dtype=int)
        if centroids.shape != (self.k, 2):
            raise InvalidInput(f"expected {self.k} 2D centroids, got {centroids.shape}")
        if assignment.size and (assignment.min() < 0 or assignment.max() >= self.k):
            raise InvalidInput("assignment index out of range")
        centroids.setflags(write=False)
        assignment.setflags(write=False)
        object.__setattr__(self, "centroids", centroids)
        object.__setattr__(self, "assignment", assignment)


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.sum(diff * diff, axis=2)


def _pick_weighted(weights: np.ndarray, rng: RngStream) -> tuple[int, RngStream]:
    total = float(weights.sum())
    u, rng = uniform(rng)
    if total <= 0.0:
        return min(int(u * len(weights)), len(weights) - 1), rng
    cum = np.cumsum(weights)
    idx = int(np.searchsorted(cum, u * total, side="right"))
    return min(idx, len(weights) - 1), rng


def kmeans_cluster(
    points,
    k: int,
    rng: RngStream,
    max_iters: int = 100,
    on_iteration=None,
) -> Clustering:
    """Cluster 2D points into k groups.

    Centroids are seeded with k-means++ from the provided stream, then Lloyd
    iterations run until the assignment stops changing or ``max_iters`` is
    hit. A cluster that empties is reseeded to the point currently farthest
    from its centroid. ``on_iteration(i, centroids, assignment, sse)`` is
    called after every Lloyd iteration when given.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    n = points.shape[0]
    if k < 1 or k > n:
        raise InvalidInput(f"need 1 <= k <= n, got k={k} with {n} points")

    # k-means++ seeding: first uniform, then proportional to squared distance.
    u, rng = uniform(rng)
    centroids = [points[min(int(u * n), n - 1)]]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    while len(centroids) < k:
        idx, rng = _pick_weighted(d2, rng)
        centroids.append(points[idx])
        d2 = np.minimum(d2, np.sum((points - centroids[-1]) ** 2, axis=1))
    centroids = np.array(centroids)

    assignment = np.full(n, -1, dtype=int)
    sse = float("inf")
    for it in range(max_iters):
        dists = _squared_distances(points, centroids)
        new_assignment = np.argmin(dists, axis=1)
        if np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment
        for c in range(k):
            members = points[assignment == c]
            if len(members):
                centroids[c] = members.mean(axis=0)
            else:
                # Reseed an empty cluster at the point farthest from its centroid.
                per_point = np.sum((points - centroids[assignment]) ** 2, axis=1)
                farthest = int(np.argmax(per_point))
                centroids[c] = points[farthest]
        sse = float(np.min(_squared_distances(points, centroids), axis=1).sum())
        if on_iteration is not None:
            on_iteration(it, centroids.copy(), assignment.copy(), sse)

    dists = _squared_distances(points, centroids)
    assignment = np.argmin(dists, axis=1)
    sse = float(dists[np.arange(n), assignment].sum())
    return Clustering(k, centroids, assignment, sse)
