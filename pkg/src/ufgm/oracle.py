"""Composite problem oracles: smooth first-order part, proximal part, regularity metadata.

A problem is ``F = f + g`` on R^n where ``f`` is convex with a (sub)gradient
oracle and ``g`` is convex, lower semicontinuous and prox-friendly.  Vectors
are plain 1-D float64 numpy arrays; all operands of one problem share its
dimension.  Oracles must be pure: evaluation never mutates problem data, and
callers treat returned arrays as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Vector = np.ndarray


class DimensionMismatchError(ValueError):
    """Operand dimension differs from the problem dimension."""


def _zero_value(x: Vector) -> float:
    return 0.0


def _identity_prox(center: Vector, weight: float) -> Vector:
    return center


@dataclass(frozen=True)
class RegularityInfo:
    """Optional convexity/smoothness moduli of the smooth part.

    ``p``/``mu`` describe uniform convexity (p >= 2, p = 2 is strong
    convexity), ``q``/``L`` weak smoothness (q in [1, 2], q = 2 is a
    Lipschitz gradient).  Any subset may be known.
    """

    p: Optional[float] = None
    mu: Optional[float] = None
    q: Optional[float] = None
    L: Optional[float] = None

    def condition_number(self) -> float:
        """kappa = L^(2/q) / mu^(2/p); requires all four moduli."""
        if None in (self.p, self.mu, self.q, self.L):
            raise ValueError("condition number needs p, mu, q and L")
        if self.mu <= 0 or self.L <= 0:
            raise ValueError("condition number needs mu > 0 and L > 0")
        return self.L ** (2.0 / self.q) / self.mu ** (2.0 / self.p)


@dataclass(frozen=True)
class CompositeProblem:
    """Oracle bundle for F = f + g.

    ``smooth_value``/``smooth_gradient`` evaluate f; at nondifferentiable
    points the gradient oracle returns one subgradient of the implementer's
    choice.  ``nonsmooth_value`` may return ``inf``.  ``nonsmooth_prox``
    solves ``argmin_x { weight * g(x) + 0.5 * ||x - center||^2 }``; the
    default g = 0 makes it the identity.
    """

    dim: int
    smooth_value: Callable[[Vector], float]
    smooth_gradient: Callable[[Vector], Vector]
    nonsmooth_value: Callable[[Vector], float] = _zero_value
    nonsmooth_prox: Callable[[Vector, float], Vector] = _identity_prox
    regularity: Optional[RegularityInfo] = None
    fingerprint: str = ""

    def check_dim(self, x: Vector) -> None:
        if x.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected shape ({self.dim},), got {x.shape}"
            )


def eval_composite(problem: CompositeProblem, x: Vector) -> float:
    """F(x) = f(x) + g(x); may be +inf when g(x) is."""
    problem.check_dim(x)
    return float(problem.smooth_value(x)) + float(problem.nonsmooth_value(x))


def partial_linearization(problem: CompositeProblem, x: Vector, y: Vector) -> float:
    """l_F(x; y) = f(y) + <grad f(y), x - y> + g(x), the partial linearization of F at y."""
    problem.check_dim(x)
    problem.check_dim(y)
    g = problem.smooth_gradient(y)
    return (
        float(problem.smooth_value(y))
        + float(np.dot(g, x - y))
        + float(problem.nonsmooth_value(x))
    )


def prox(problem: CompositeProblem, center: Vector, weight: float) -> Vector:
    """argmin_x { weight * g(x) + 0.5 * ||x - center||^2 }, weight >= 0.

    This is the single prox convention of the package; algorithmic step
    sizes are converted to it at call sites.
    """
    problem.check_dim(center)
    if weight < 0:
        raise ValueError(f"prox weight must be >= 0, got {weight}")
    return problem.nonsmooth_prox(center, float(weight))


def estimate_regularity(
    problem: CompositeProblem,
    samples: int,
    region: tuple[float, float] | tuple[Vector, Vector],
    p: Optional[float] = None,
    q: Optional[float] = None,
    seed: int = 0,
) -> RegularityInfo:
    """Empirical moduli of f from sampled pairs in a box.

    For a fixed exponent ``p`` the returned ``mu`` is the infimum over
    sampled pairs of ``p * [f(x) - f(y) - <grad f(y), x - y>] / ||x - y||^p``,
    which never exceeds the true modulus; for a fixed ``q`` the returned
    ``L`` is the supremum analogue and never undershoots (up to sampling).
    Advisory only: solvers take their moduli from explicit configuration.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    lo, hi = region
    lo = np.broadcast_to(np.asarray(lo, dtype=float), (problem.dim,))
    hi = np.broadcast_to(np.asarray(hi, dtype=float), (problem.dim,))
    rng = np.random.default_rng(seed)
    pts = lo + (hi - lo) * rng.random((samples, problem.dim))

    mu_est = np.inf if p is not None else None
    L_est = 0.0 if q is not None else None
    for i in range(samples):
        y = pts[i]
        fy = problem.smooth_value(y)
        gy = problem.smooth_gradient(y)
        for j in range(samples):
            if j == i:
                continue
            x = pts[j]
            d = x - y
            nd = float(np.linalg.norm(d))
            if nd == 0.0:
                continue
            gap = float(problem.smooth_value(x)) - float(fy) - float(np.dot(gy, d))
            if p is not None:
                mu_est = min(mu_est, p * gap / nd**p)
            if q is not None:
                L_est = max(L_est, q * gap / nd**q)
    return RegularityInfo(p=p, mu=mu_est, q=q, L=L_est)
