"""Dense box-constrained QP solver via ADMM operator splitting.

Solves min 0.5 x'Px + q'x subject to l <= Ax <= u, the subproblem shape the
model-predictive tracker produces. Fixed penalty, no external solver.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from navsim.errors import InvalidInput, NoConvergence


@dataclass(frozen=True)
class Qp:
    """Problem data; P must be symmetric (1e-9) and l <= u elementwise."""

    p: np.ndarray
    q: np.ndarray
    a: np.ndarray
    l: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        q = np.array(self.q, dtype=float).reshape(-1)
        a = np.array(self.a, dtype=float)
        lo = np.array(self.l, dtype=float).reshape(-1)
        hi = np.array(self.u, dtype=float).reshape(-1)
        n = q.shape[0]
        if p.shape != (n, n):
            raise InvalidInput(f"P shape {p.shape} does not match q length {n}")
        if np.max(np.abs(p - p.T)) > 1e-9:
            raise InvalidInput("P is not symmetric within 1e-9")
        if a.ndim != 2 or a.shape[1] != n:
            raise InvalidInput(f"A shape {a.shape} does not match variable count {n}")
        m = a.shape[0]
        if lo.shape != (m,) or hi.shape != (m,):
            raise InvalidInput("bound vectors must match the constraint count")
        if np.any(lo > hi):
            raise InvalidInput("need l <= u elementwise")
        for arr in (p, q, a, lo, hi):
            arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "l", lo)
        object.__setattr__(self, "u", hi)


@dataclass(frozen=True)
class AdmmParams:
    rho: float = 1.0
    sigma: float = 1e-6
    alpha: float = 1.6
    max_iter: int = 4000
    eps: float = 1e-6


def qp_solve_admm(
    problem: Qp, params: AdmmParams = AdmmParams(), x0=None, y0=None
) -> np.ndarray:
    """Operator-splitting iteration with over-relaxation folded in.

    Per iteration: solve (P + sigma I + rho A'A) xt = sigma x - q + A'(rho z - y),
    relax x <- alpha xt + (1-alpha) x, project z <- clip(axr + y/rho, l, u) where
    axr = alpha A xt + (1-alpha) z is the relaxed constraint image, and ascend
    y <- y + rho (axr - z). Terminates when both ||Ax - z||_inf and the
    stationarity residual ||Px + q + A'y||_inf drop below eps; raises
    NoConvergence (carrying the best iterate) at max_iter. ``x0``/``y0`` warm
    starts are optional.
    """
    p, q, a, lo, hi = problem.p, problem.q, problem.a, problem.l, problem.u
    n = q.shape[0]
    rho, sigma, alpha = params.rho, params.sigma, params.alpha
    kkt = p + sigma * np.eye(n) + rho * (a.T @ a)
    factor = cho_factor(kkt)
    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float).reshape(n)
    y = np.zeros(a.shape[0]) if y0 is None else np.array(y0, dtype=float).reshape(a.shape[0])
    z = np.clip(a @ x, lo, hi)
    best_x = x
    best_res = np.inf
    for _ in range(params.max_iter):
        rhs = sigma * x - q + a.T @ (rho * z - y)
        x_tilde = cho_solve(factor, rhs)
        ax_relaxed = alpha * (a @ x_tilde) + (1.0 - alpha) * z
        x = alpha * x_tilde + (1.0 - alpha) * x
        z = np.clip(ax_relaxed + y / rho, lo, hi)
        y = y + rho * (ax_relaxed - z)
        ax = a @ x
        primal = float(np.max(np.abs(ax - z))) if ax.size else 0.0
        dual = float(np.max(np.abs(p @ x + q + a.T @ y)))
        if max(primal, dual) < best_res:
            best_res = max(primal, dual)
            best_x = x.copy()
        if primal < params.eps and dual < params.eps:
            return x
    raise NoConvergence(
        f"ADMM residual {best_res:.3e} after {params.max_iter} iterations", best=best_x
    )
