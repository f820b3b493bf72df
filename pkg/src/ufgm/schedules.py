"""Tolerance-sequence and restart-schedule policies.

Tolerance schedules are pure policies over a :class:`ToleranceContext`: they
never see the problem, so recomputing the tolerance after a step-size
doubling (which changes the trial weight ``a_next``) is sound.  They return
the pair ``(eps_n, delta_n)``; algorithm families that carry no
strong-convexity surrogate simply get ``delta_n = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class ToleranceContext:
    n: int
    a_next: float
    A_prev: float
    energy_improved: bool
    prev_eps: float
    prev_delta: float


class ConstantTolerance:
    """eps_n = eps forever; ``split`` divides it evenly between eps and delta."""

    def __init__(self, eps: float, split: bool = False):
        if not eps > 0:
            raise ValueError("constant tolerance must be > 0")
        self.eps = float(eps)
        self.split = split

    def query(self, ctx: ToleranceContext) -> tuple[float, float]:
        if self.split:
            return 0.5 * self.eps, 0.5 * self.eps
        return self.eps, 0.0


class ZeroTolerance:
    """eps_n = delta_n = 0; valid under the q = 2 / p = 2 conventions."""

    def query(self, ctx: ToleranceContext) -> tuple[float, float]:
        return 0.0, 0.0


class PowerTolerance:
    """eps_n = C_eps / (a_{n+1} (A_n + a_{n+1})^e) with e = 2(p-q)/(p(3q-2)).

    For p = 2 the exponent reduces to (2-q)/(3q-2).  A zero coefficient
    yields tolerance 0, which is permitted only with the q = 2 (for eps) or
    p = 2 (for delta) conventions.
    """

    def __init__(self, c_eps: float, c_delta: float, p: float, q: float):
        if not 3.0 * q - 2.0 > 0:
            raise ValueError("power tolerance needs 3q - 2 > 0")
        if c_eps < 0 or c_delta < 0:
            raise ValueError("coefficients must be >= 0")
        self.c_eps = float(c_eps)
        self.c_delta = float(c_delta)
        self.exponent = 2.0 * (p - q) / (p * (3.0 * q - 2.0))

    def query(self, ctx: ToleranceContext) -> tuple[float, float]:
        scale = ctx.a_next * (ctx.A_prev + ctx.a_next) ** self.exponent
        return self.c_eps / scale, self.c_delta / scale


class AdaptiveTolerance:
    """Halve both tolerances whenever the previous candidate failed to decrease F."""

    def __init__(self, eps0: float, delta0: float = 0.0):
        if eps0 < 0 or delta0 < 0:
            raise ValueError("initial tolerances must be >= 0")
        self.eps0 = float(eps0)
        self.delta0 = float(delta0)

    def query(self, ctx: ToleranceContext) -> tuple[float, float]:
        if ctx.n == 0:
            return self.eps0, self.delta0
        if ctx.energy_improved:
            return ctx.prev_eps, ctx.prev_delta
        return 0.5 * ctx.prev_eps, 0.5 * ctx.prev_delta


@dataclass(frozen=True)
class RestartSchedule:
    """Scheduled restarts: the r-th restart fires after sum_{k<=r} ceil(t_k)
    iterations with t_k = C * exp(ratio * k), ratio = 1 - q/p; at each fire
    the run's constant tolerance is scaled by exp(-gamma)."""

    C: float
    gamma: float
    ratio: float

    def points(self, budget: int) -> Iterator[int]:
        """Strictly increasing fire points, capped at the iteration budget."""
        total = 0
        k = 1
        while True:
            t_k = self.C * math.exp(self.ratio * k)
            if t_k > budget:
                return
            total += math.ceil(t_k)
            if total > budget:
                return
            yield total
            k += 1


def restart_points(p: float, q: float, C: float, gamma: float, budget: int) -> list[int]:
    """Materialized fire points of the schedule t_k = C e^{(1 - q/p) k}."""
    if not C > 0:
        raise ValueError("restart period constant must be > 0")
    if p < q:
        raise ValueError("need p >= q")
    sched = RestartSchedule(C=C, gamma=gamma, ratio=1.0 - q / p)
    return list(sched.points(budget))


def theoretical_restart_constants(
    p: float, q: float, kappa: float, energy_gap: float
) -> tuple[float, float, float]:
    """The analytically justified (eps0, gamma, C) for scheduled restarts.

    gamma = (3q-2)/2, eps0 = e^{-gamma} * (F(x0) - F(x*)), and
    C = e^{q/p} (8 e^{2/e} kappa)^{q/(3q-2)} (e^{gamma} eps0)^{-2(p-q)/(p(3q-2))}.
    """
    if not kappa > 0:
        raise ValueError("kappa must be > 0")
    gamma = 0.5 * (3.0 * q - 2.0)
    eps0 = math.exp(-gamma) * energy_gap
    C = (
        math.exp(q / p)
        * (8.0 * math.exp(2.0 / math.e) * kappa) ** (q / (3.0 * q - 2.0))
        * (math.exp(gamma) * eps0) ** (-2.0 * (p - q) / (p * (3.0 * q - 2.0)))
    )
    return eps0, gamma, C
