"""Synthetic problems with analytically known convexity/smoothness constants.

These back the quantitative growth-bound checks, so each constructor
documents exactly which moduli are valid and on which set.  Smoothness
constants that only hold on a level set are derived from the sharpness
radius: if f is (p, mu)-uniformly convex then any x with
f(x) - f(x*) <= gap satisfies ||x - x*|| <= (p * gap / mu)^(1/p).
"""

from __future__ import annotations

import numpy as np

from ..oracle import CompositeProblem, RegularityInfo, Vector

# valid Hoelder modulus of grad (1/q)||x||^q: |grad h(x) - grad h(y)| <= 2^(2-q) |x-y|^(q-1)
_POWER_HOLDER = lambda q: 2.0 ** (2.0 - q)


def _power_gradient(x: Vector, expo: float) -> Vector:
    # gradient of (1/e)||x||^e, continuously extended by 0 at the origin
    n = float(np.linalg.norm(x))
    if n == 0.0:
        return np.zeros_like(x)
    return n ** (expo - 2.0) * x


def make_power_problem(
    dim: int, p_exp: float, linear_coef: Vector | None = None, x0: Vector | None = None
) -> CompositeProblem:
    """f(x) = (1/p)||x||^p - <c, x>,  g = 0.

    Exactly (p, 2^(2-p))-uniformly convex everywhere.  The minimizer is
    x* = ||c||^(1/(p-1)) * c/||c|| (0 when c = 0).  When ``x0`` is given,
    the returned regularity also carries a Lipschitz-gradient constant
    (q = 2) valid on the level set of x0: L = (p-1) * (||x*|| + R)^(p-2)
    with R the sharpness radius of the level gap.
    """
    if p_exp < 2:
        raise ValueError("p_exp must be >= 2")
    c = np.zeros(dim) if linear_coef is None else np.asarray(linear_coef, dtype=float)
    if c.shape != (dim,):
        raise ValueError("linear_coef has wrong shape")

    def value(x):
        return float(np.linalg.norm(x) ** p_exp) / p_exp - float(np.dot(c, x))

    def gradient(x):
        return _power_gradient(x, p_exp) - c

    mu = 2.0 ** (2.0 - p_exp)
    nc = float(np.linalg.norm(c))
    x_star = (nc ** (1.0 / (p_exp - 1.0)) / nc) * c if nc > 0 else np.zeros(dim)
    q = None
    L = None
    if x0 is not None:
        gap = value(np.asarray(x0, dtype=float)) - value(x_star)
        radius = (p_exp * max(gap, 0.0) / mu) ** (1.0 / p_exp)
        q = 2.0
        L = (p_exp - 1.0) * (float(np.linalg.norm(x_star)) + radius) ** (p_exp - 2.0)
    return CompositeProblem(
        dim=dim,
        smooth_value=value,
        smooth_gradient=gradient,
        regularity=RegularityInfo(p=p_exp, mu=mu, q=q, L=L),
        fingerprint=f"power;dim={dim};p={p_exp:.12g}",
    )


def power_problem_minimizer(dim: int, p_exp: float, linear_coef: Vector | None) -> Vector:
    if linear_coef is None:
        return np.zeros(dim)
    c = np.asarray(linear_coef, dtype=float)
    nc = float(np.linalg.norm(c))
    if nc == 0.0:
        return np.zeros(dim)
    return (nc ** (1.0 / (p_exp - 1.0)) / nc) * c


def make_holder_problem(
    dim: int, q_exp: float, mu: float, x0: Vector | None = None
) -> CompositeProblem:
    """f(x) = (mu/2)||x||^2 + (1/q)||x||^q,  g = 0, minimized at 0.

    Strongly convex with modulus exactly ``mu`` (the power term is convex).
    With ``x0`` given, a (q, L)-weak-smoothness constant valid on the level
    set of x0 is attached: the quadratic remainder is absorbed over the
    level-set diameter D, L = q * mu * D^(2-q) / 2 + 2^(2-q).
    """
    if not 1.0 <= q_exp <= 2.0:
        raise ValueError("q_exp must be in [1, 2]")
    if not mu > 0:
        raise ValueError("mu must be > 0")

    def value(x):
        n = float(np.linalg.norm(x))
        return 0.5 * mu * n * n + n**q_exp / q_exp

    def gradient(x):
        return mu * x + _power_gradient(x, q_exp)

    L = None
    if x0 is not None:
        gap = value(np.asarray(x0, dtype=float))
        diameter = 2.0 * np.sqrt(2.0 * gap / mu)
        L = 0.5 * q_exp * mu * diameter ** (2.0 - q_exp) + _POWER_HOLDER(q_exp)
    return CompositeProblem(
        dim=dim,
        smooth_value=value,
        smooth_gradient=gradient,
        regularity=RegularityInfo(p=2.0, mu=mu, q=q_exp, L=L),
        fingerprint=f"holder;dim={dim};q={q_exp:.12g};mu={mu:.12g}",
    )


def make_mixed_power_problem(
    dim: int, p_exp: float, q_exp: float, x0: Vector | None = None
) -> CompositeProblem:
    """f(x) = (1/p)||x||^p + (1/q)||x||^q,  g = 0, minimized at 0.

    (p, 2^(2-p))-uniformly convex from the first term.  With ``x0`` given, a
    (q, L) constant valid on the level set is attached: the p-term gradient
    is (p-1)R^(p-2)-Lipschitz on the level ball of radius R = (p F(x0))^(1/p),
    and its remainder is absorbed over the diameter 2R.
    """
    if p_exp < 2:
        raise ValueError("p_exp must be >= 2")
    if not 1.0 <= q_exp <= 2.0:
        raise ValueError("q_exp must be in [1, 2]")

    def value(x):
        n = float(np.linalg.norm(x))
        return n**p_exp / p_exp + n**q_exp / q_exp

    def gradient(x):
        return _power_gradient(x, p_exp) + _power_gradient(x, q_exp)

    mu = 2.0 ** (2.0 - p_exp)
    L = None
    if x0 is not None:
        radius = (p_exp * value(np.asarray(x0, dtype=float))) ** (1.0 / p_exp)
        lip_p = (p_exp - 1.0) * radius ** (p_exp - 2.0)
        L = 0.5 * q_exp * lip_p * (2.0 * radius) ** (2.0 - q_exp) + _POWER_HOLDER(q_exp)
    return CompositeProblem(
        dim=dim,
        smooth_value=value,
        smooth_gradient=gradient,
        regularity=RegularityInfo(p=p_exp, mu=mu, q=q_exp, L=L),
        fingerprint=f"mixed;dim={dim};p={p_exp:.12g};q={q_exp:.12g}",
    )


def make_l1_problem(dim: int, lam: float, seed: int = 0) -> CompositeProblem:
    """f(x) = 0.5 ||Ax - b||^2 with a fixed well-conditioned A, g = lam * ||x||_1.

    A has singular values in [0.5, 1.5] built deterministically from the
    seed, so mu = lmin(A^T A) and L = lmax(A^T A) are exact; the prox of g
    is coordinate-wise soft thresholding.
    """
    if lam < 0:
        raise ValueError("lam must be >= 0")
    rng = np.random.default_rng(seed)
    U, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    V, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    svals = np.linspace(0.5, 1.5, dim)
    A = U @ np.diag(svals) @ V.T
    b = A @ rng.standard_normal(dim)

    def value(x):
        r = A @ x - b
        return 0.5 * float(np.dot(r, r))

    def gradient(x):
        return A.T @ (A @ x - b)

    def g_value(x):
        return lam * float(np.abs(x).sum())

    def g_prox(center, weight):
        t = weight * lam
        return np.sign(center) * np.maximum(np.abs(center) - t, 0.0)

    return CompositeProblem(
        dim=dim,
        smooth_value=value,
        smooth_gradient=gradient,
        nonsmooth_value=g_value,
        nonsmooth_prox=g_prox,
        regularity=RegularityInfo(
            p=2.0, mu=float(svals.min() ** 2), q=2.0, L=float(svals.max() ** 2)
        ),
        fingerprint=f"l1;dim={dim};lam={lam:.12g};seed={seed}",
    )
