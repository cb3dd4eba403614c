"""Small dense linear-algebra kernels: SPD factor/solve and the discrete Riccati equation.

Matrices are plain numpy arrays. Everything here targets the small systems
used by the filters and controllers (state dimensions well under 100).
"""

import numpy as np
from scipy.linalg import solve_triangular

from navsim.errors import InvalidInput, NoConvergence, NotPositiveDefinite

SYMMETRY_TOL = 1e-9


def _square(a, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"{name} must be square, got shape {a.shape}")
    return a


def cholesky(a) -> np.ndarray:
    """Lower-triangular L with positive diagonal and L @ L.T == a.

    ``a`` must be symmetric to within 1e-9. On a pivot failure one jitter of
    1e-10 * trace(a)/n is added to the diagonal and the factorization is
    retried once; a second failure raises NotPositiveDefinite.
    """
    a = _square(a, "a")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise InvalidInput("matrix is not symmetric within 1e-9")
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        pass
    n = a.shape[0]
    jitter = 1e-10 * np.trace(a) / max(n, 1)
    try:
        return np.linalg.cholesky(a + jitter * np.eye(n))
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(
            "matrix is not positive definite (jitter retry failed)"
        ) from None


def solve_spd(a, b) -> np.ndarray:
    """Solve a @ x = b for SPD ``a`` via the Cholesky factor.

    Shares cholesky's jitter/error behaviour. ``b`` may be a vector or a
    matrix with matching row count.
    """
    a = _square(a, "a")
    b = np.asarray(b, dtype=float)
    if b.shape[0] != a.shape[0]:
        raise InvalidInput(f"b has {b.shape[0]} rows, expected {a.shape[0]}")
    low = cholesky(a)
    y = solve_triangular(low, b, lower=True)
    return solve_triangular(low.T, y, lower=False)


def solve_dare(a, b, q, r, tol: float = 1e-10, max_iter: int = 10_000):
    """Solve the discrete algebraic Riccati equation by fixed-point iteration.

    Iterates P <- A'PA - A'PB (R + B'PB)^-1 B'PA + Q from P0 = Q until the
    max elementwise change drops below ``tol``. Returns (P, K) with
    K = (R + B'PB)^-1 B'PA. Raises NoConvergence past ``max_iter`` steps.
    """
    a = _square(a, "A")
    q = _square(q, "Q")
    r = _square(r, "R")
    b = np.asarray(b, dtype=float)
    if b.ndim == 1:
        b = b[:, None]
    n, m = b.shape
    if a.shape != (n, n) or q.shape != (n, n) or r.shape != (m, m):
        raise InvalidInput(
            f"inconsistent shapes: A{a.shape} B{b.shape} Q{q.shape} R{r.shape}"
        )
    p = q.copy()
    for _ in range(max_iter):
        btp = b.T @ p
        k = solve_spd(r + btp @ b, btp @ a)
        p_next = a.T @ p @ a - (a.T @ p @ b) @ k + q
        p_next = 0.5 * (p_next + p_next.T)
        if np.max(np.abs(p_next - p)) < tol:
            btp = b.T @ p_next
            k = solve_spd(r + btp @ b, btp @ a)
            return p_next, k
        p = p_next
    raise NoConvergence(f"DARE did not converge in {max_iter} iterations", best=p)


def spectral_radius(m, iters: int = 500, seed: int = 0x5EED) -> float:
    """Estimate max |eigenvalue| by normalized power iteration.

    Uses the geometric mean of the per-step growth factors, which converges
    for complex dominant pairs as well. Intended as a test helper, not a
    general eigensolver.
    """
    m = _square(m, "m")
    n = m.shape[0]
    gen = np.random.default_rng(seed)
    v = gen.standard_normal(n)
    v /= np.linalg.norm(v)
    log_growth = 0.0
    for _ in range(iters):
        w = m @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        log_growth += np.log(norm)
        v = w / norm
    return float(np.exp(log_growth / iters))
