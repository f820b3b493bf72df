"""Estimating functions in closed canonical form.

The running lower model ``phi_n`` accumulated by the accelerated iteration is
always of the shape

    phi(x) = constant + <linear, x> + (quad/2) ||x||^2 + g_weight * g(x),

so it is stored as these coefficients instead of a list of linearizations;
memory stays O(dim) no matter how many terms were folded in.  ``strong_mass``
tracks the accumulated inexact strong-convexity weight, and ``quad`` equals
``1 + strong_mass`` at all times (exactly, both are updated with the same
product).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oracle import CompositeProblem, Vector, prox


@dataclass(frozen=True)
class EstimatingFunction:
    linear: Vector
    constant: float
    g_weight: float
    strong_mass: float

    @property
    def quad(self) -> float:
        # derived, so quad = 1 + strong_mass can never drift apart
        return 1.0 + self.strong_mass

    @classmethod
    def from_anchor(cls, x0: Vector) -> "EstimatingFunction":
        """phi(x) = 0.5 ||x - x0||^2."""
        x0 = np.asarray(x0, dtype=float)
        return cls(
            linear=-x0,
            constant=0.5 * float(np.dot(x0, x0)),
            g_weight=0.0,
            strong_mass=0.0,
        )

    def accumulate(
        self,
        a: float,
        y: Vector,
        f_y: float,
        grad_y: Vector,
        sigma: float,
        delta: float,
    ) -> "EstimatingFunction":
        """Fold in ``a * (l_F(.; y) + (sigma/2)||. - y||^2 - delta/2)``.

        ``sigma`` is the inexact strong-convexity coefficient already
        converted by the caller (``delta^((p-2)/p) * mu^(2/p)``); with
        sigma = delta = 0 this is the plain linearization update.
        """
        if not a > 0:
            raise ValueError(f"accumulation weight must be > 0, got {a}")
        return EstimatingFunction(
            linear=self.linear + a * (grad_y - sigma * y),
            constant=self.constant
            + a * (f_y - float(np.dot(grad_y, y)) + 0.5 * sigma * float(np.dot(y, y)) - 0.5 * delta),
            g_weight=self.g_weight + a,
            strong_mass=self.strong_mass + a * sigma,
        )

    def minimizer(self, problem: CompositeProblem) -> Vector:
        """argmin phi via one prox call; exactly -linear/quad when g = 0."""
        center = -self.linear / self.quad
        return prox(problem, center, self.g_weight / self.quad)

    def value(self, problem: CompositeProblem, x: Vector) -> float:
        v = (
            self.constant
            + float(np.dot(self.linear, x))
            + 0.5 * self.quad * float(np.dot(x, x))
        )
        # g_weight = 0 must not turn an infeasible g(x) = +inf into nan
        if self.g_weight > 0.0:
            v += self.g_weight * float(problem.nonsmooth_value(x))
        return v
