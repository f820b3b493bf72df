"""Accelerated composite gradient engine.

One iteration loop covers the whole method family: a momentum weight is
found from ``a^2/(A + a) = (1 + strong_mass)/Lhat``, the step size ``Lhat``
is searched by doubling from ``L_n/2`` under an inexactness-relaxed descent
test, and the estimating function accumulates the linearization plus an
inexact strong-convexity quadratic.  Setting ``mu = 0`` (and tolerance
``delta = 0``) recovers the plain universal method; ``p = 2`` recovers the
strongly convex variants; a restart schedule turns the constant-tolerance
run into the scheduled-restart method.

Runs are deterministic: the only randomness is the seeded probe generator
of the optional invariant checks.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .estimating import EstimatingFunction
from .oracle import CompositeProblem, Vector, eval_composite, prox
from .schedules import RestartSchedule, ToleranceContext

# beyond these, momentum weights stop being representable in float64
_A_LIMIT = 1e300
_L_FLOOR = 1e-300


class BacktrackingError(RuntimeError):
    """Step-size search exceeded max_backtracks; the descent test never held.

    Signals a wrong oracle (gradient inconsistent with values) or a
    nonconvex input rather than a tuning problem.
    """


class RangeExhaustedError(RuntimeError):
    """Accumulated weight or step size left the float64 range."""


class InvariantViolationError(RuntimeError):
    """A runtime estimating-function invariant failed at a checkpoint."""


@dataclass
class SolverConfig:
    """Run parameters: convexity inputs (p, mu), initial step guess L0,
    tolerance schedule, optional restart schedule, and budgets."""

    schedule: object
    p: float = 2.0
    mu: float = 0.0
    L0: float = 1.0
    restarts: Optional[RestartSchedule] = None
    max_backtracks: int = 200
    budget: int = 1000
    time_limit: Optional[float] = None
    log_every: int = 1
    check_every: int = 0
    check_probes: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("uniform convexity exponent p must be >= 2")
        if self.mu < 0:
            raise ValueError("mu must be >= 0")
        if not self.L0 > 0:
            raise ValueError("L0 must be > 0")


@dataclass
class SolverState:
    n: int
    x: Vector
    L: float
    phi: EstimatingFunction
    best_F: float
    anchor: Vector
    A: float = 0.0
    eps_mass: float = 0.0
    delta_mass: float = 0.0
    prev_eps: float = 0.0
    prev_delta: float = 0.0
    energy_improved: bool = True
    tol_scale: float = 1.0
    _A_comp: float = 0.0

    def add_weight(self, a: float) -> None:
        # Kahan-compensated so A stays accurate over very long runs
        y = a - self._A_comp
        t = self.A + y
        self._A_comp = (t - self.A) - y
        self.A = t

    def reset_weight(self) -> None:
        self.A = 0.0
        self._A_comp = 0.0

    def eps_bar(self) -> float:
        return self.eps_mass / self.A if self.A > 0 else 0.0

    def delta_bar(self) -> float:
        return self.delta_mass / self.A if self.A > 0 else 0.0


@dataclass(frozen=True)
class StepCandidate:
    """One trial of the inner step-size search at a fixed Lhat."""

    a: float
    theta: float
    y: Vector
    z: Vector
    x_tilde: Vector
    eps: float
    delta: float
    f_y: float
    grad_y: Vector
    v: Vector


def solve_momentum(A: float, M: float, Lhat: float) -> float:
    """Positive root a of a^2/(A + a) = M/Lhat.

    With r = M/Lhat the root is (r + sqrt(r^2 + 4 r A))/2; at A = 0 it
    degenerates to a = r.
    """
    if not (math.isfinite(A) and math.isfinite(M) and math.isfinite(Lhat)):
        raise ValueError("momentum equation needs finite inputs")
    r = M / Lhat
    return 0.5 * (r + math.sqrt(r * r + 4.0 * r * A))


def strong_sigma(delta: float, mu: float, p: float) -> float:
    """Inexact strong-convexity coefficient delta^((p-2)/p) * mu^(2/p).

    Uses the 0^0 = 1 convention, so p = 2 keeps sigma = mu even at delta = 0.
    """
    if mu == 0.0:
        return 0.0
    e = (p - 2.0) / p
    if e == 0.0:
        return mu
    if delta == 0.0:
        return 0.0
    return delta**e * mu ** (2.0 / p)


def accept_test(
    F_tilde: float, lin: float, Lhat: float, diff_sq: float, theta: float, eps: float
) -> bool:
    """Descent condition F(x~) <= l_F(x~; y) + (Lhat/2)||x~ - y||^2 + theta*eps/2."""
    return F_tilde <= lin + 0.5 * Lhat * diff_sq + 0.5 * theta * eps


def trial_step(
    state: SolverState,
    problem: CompositeProblem,
    Lhat: float,
    schedule,
    v: Optional[Vector] = None,
) -> StepCandidate:
    """Build the candidate step for one trial value of Lhat.

    The tolerance pair is re-queried here because it may depend on the
    trial weight ``a``, which changes with Lhat.
    """
    if not Lhat > 0:
        raise RangeExhaustedError(f"step size collapsed to {Lhat}")
    M = 1.0 + state.phi.strong_mass
    a = solve_momentum(state.A, M, Lhat)
    if not (a > 0.0 and math.isfinite(a)):
        raise RangeExhaustedError(f"momentum weight left float range (a={a})")
    theta = a / (state.A + a)
    if v is None:
        v = state.phi.minimizer(problem)
    y = (1.0 - theta) * state.x + theta * v
    eps, delta = schedule.query(
        ToleranceContext(
            n=state.n,
            a_next=a,
            A_prev=state.A,
            energy_improved=state.energy_improved,
            prev_eps=state.prev_eps,
            prev_delta=state.prev_delta,
        )
    )
    eps *= state.tol_scale
    delta *= state.tol_scale
    f_y = float(problem.smooth_value(y))
    grad_y = problem.smooth_gradient(y)
    step = 1.0 / (theta * Lhat)
    z = prox(problem, v - step * grad_y, step)
    x_tilde = (1.0 - theta) * state.x + theta * z
    return StepCandidate(
        a=a, theta=theta, y=y, z=z, x_tilde=x_tilde,
        eps=eps, delta=delta, f_y=f_y, grad_y=grad_y, v=v,
    )


def iterate(state: SolverState, problem: CompositeProblem, config: SolverConfig) -> SolverState:
    """Advance the state by one accepted iteration (mutates and returns it)."""
    Lhat = 0.5 * state.L
    if state.A > _A_LIMIT:
        raise RangeExhaustedError(f"accumulated weight A={state.A:.3g} beyond float range")
    if Lhat < _L_FLOOR:
        raise RangeExhaustedError(f"step size L={state.L:.3g} beyond float range")
    v = state.phi.minimizer(problem)
    cand = None
    for _ in range(config.max_backtracks):
        cand = trial_step(state, problem, Lhat, config.schedule, v=v)
        F_tilde = eval_composite(problem, cand.x_tilde)
        diff = cand.x_tilde - cand.y
        diff_sq = float(np.dot(diff, diff))
        lin = (
            cand.f_y
            + float(np.dot(cand.grad_y, diff))
            + float(problem.nonsmooth_value(cand.x_tilde))
        )
        if accept_test(F_tilde, lin, Lhat, diff_sq, cand.theta, cand.eps):
            break
        Lhat *= 2.0
    else:
        raise BacktrackingError(
            f"no acceptable step after {config.max_backtracks} doublings at "
            f"iteration {state.n} (Lhat={Lhat:.3g}); check the gradient oracle "
            f"and convexity of the problem"
        )

    sigma = strong_sigma(cand.delta, config.mu, config.p)
    state.phi = state.phi.accumulate(
        cand.a, cand.y, cand.f_y, cand.grad_y, sigma, cand.delta
    )
    state.add_weight(cand.a)
    state.eps_mass += cand.a * cand.eps
    state.delta_mass += cand.a * cand.delta
    improved = F_tilde <= state.best_F
    if improved:
        # monotone pick; ties keep the candidate to retain momentum
        state.x = cand.x_tilde
        state.best_F = F_tilde
    state.energy_improved = improved
    state.prev_eps = cand.eps
    state.prev_delta = cand.delta
    state.L = Lhat
    state.n += 1
    return state


def restart(state: SolverState, config: SolverConfig) -> SolverState:
    """Forget accumulated weight and model, re-anchor at the current iterate.

    The step-size estimate L carries over; the run's constant tolerance is
    scaled by exp(-gamma) through ``tol_scale``.
    """
    state.anchor = state.x
    state.phi = EstimatingFunction.from_anchor(state.x)
    state.reset_weight()
    state.eps_mass = 0.0
    state.delta_mass = 0.0
    if config.restarts is not None:
        state.tol_scale *= math.exp(-config.restarts.gamma)
    return state


def check_estimating_invariants(
    state: SolverState,
    problem: CompositeProblem,
    rng: np.random.Generator,
    probes: int = 10,
    rel_tol: float = 1e-8,
) -> None:
    """Runtime checks on the accumulated lower model.

    (1) the model never exceeds A*F + half squared distance to the anchor at
    random probe points; (2) the model minimum dominates the tolerance-
    discounted energy, A*(F(x_n) - (eps_bar + delta_bar)/2) <= phi(v).
    """
    for _ in range(probes):
        xp = state.x + rng.standard_normal(problem.dim)
        Fp = eval_composite(problem, xp)
        if not math.isfinite(Fp):
            continue
        lhs = state.phi.value(problem, xp)
        AF = state.A * Fp
        d = xp - state.anchor
        rhs = AF + 0.5 * float(np.dot(d, d))
        if lhs > rhs + rel_tol * (1.0 + abs(AF)):
            raise InvariantViolationError(
                f"lower-model bound violated at n={state.n}: "
                f"phi(x)={lhs:.17g} > {rhs:.17g}"
            )
    if state.A > 0:
        v = state.phi.minimizer(problem)
        phi_v = state.phi.value(problem, v)
        lhs = state.A * state.best_F - 0.5 * (state.eps_mass + state.delta_mass)
        if lhs > phi_v + rel_tol * (1.0 + abs(phi_v)):
            raise InvariantViolationError(
                f"certificate bound violated at n={state.n}: "
                f"A*(F - tol/2)={lhs:.17g} > phi(v)={phi_v:.17g}"
            )


@dataclass
class ConvergenceTrace:
    """Per-iteration log: (n, F, A, L, eps_n, delta_n, elapsed seconds)."""

    n: list = field(default_factory=list)
    F: list = field(default_factory=list)
    A: list = field(default_factory=list)
    L: list = field(default_factory=list)
    eps: list = field(default_factory=list)
    delta: list = field(default_factory=list)
    elapsed: list = field(default_factory=list)
    stop_reason: str = ""

    def append(self, n, F, A, L, eps, delta, elapsed) -> None:
        self.n.append(int(n))
        self.F.append(float(F))
        self.A.append(float(A))
        self.L.append(float(L))
        self.eps.append(float(eps))
        self.delta.append(float(delta))
        self.elapsed.append(float(elapsed))

    def __len__(self) -> int:
        return len(self.n)

    def to_csv(self, path, f_star: Optional[float] = None) -> None:
        """Write rows at 17 significant digits; the energy_error column is
        emitted only when a reference value is supplied."""
        with open(path, "w") as fh:
            if f_star is None:
                fh.write("n,F,A,L,eps,delta,elapsed\n")
                for i in range(len(self)):
                    fh.write(
                        f"{self.n[i]},{self.F[i]:.17g},{self.A[i]:.17g},"
                        f"{self.L[i]:.17g},{self.eps[i]:.17g},"
                        f"{self.delta[i]:.17g},{self.elapsed[i]:.17g}\n"
                    )
            else:
                fh.write("n,F,energy_error,A,L,eps,delta,elapsed\n")
                for i in range(len(self)):
                    err = self.F[i] - f_star
                    fh.write(
                        f"{self.n[i]},{self.F[i]:.17g},{err:.17g},{self.A[i]:.17g},"
                        f"{self.L[i]:.17g},{self.eps[i]:.17g},"
                        f"{self.delta[i]:.17g},{self.elapsed[i]:.17g}\n"
                    )


def read_trace(path) -> dict:
    """Read a trace CSV back into columns keyed by header name."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        cols = {h: [] for h in header}
        for line in fh:
            parts = line.strip().split(",")
            for h, part in zip(header, parts):
                cols[h].append(int(part) if h == "n" else float(part))
    return cols


def run(
    problem: CompositeProblem,
    config: SolverConfig,
    x0: Vector,
    reporter: Optional[Callable[[SolverState], None]] = None,
) -> ConvergenceTrace:
    """Run the configured method from x0 until the budget is exhausted.

    Parameters
    ----------
    problem : CompositeProblem
        Oracle bundle; evaluated but never mutated.
    config : SolverConfig
        Method parameterization; ``config.budget`` caps iterations and
        ``config.time_limit`` (seconds) optionally caps wall time.
    x0 : array
        Starting point, also the anchor of the initial model.
    reporter : callable, optional
        Called with the state after every iteration, before logging.

    Returns
    -------
    ConvergenceTrace
        Rows every ``config.log_every`` iterations (row 0 always present).
        If the run stopped before the budget, ``stop_reason`` says why;
        leaving float64 range on fast linear-rate runs is reported there
        rather than raised.
    """
    problem.check_dim(x0)
    x0 = np.array(x0, dtype=float)
    state = SolverState(
        n=0,
        x=x0,
        L=config.L0,
        phi=EstimatingFunction.from_anchor(x0),
        best_F=eval_composite(problem, x0),
        anchor=x0,
    )
    fires = iter(config.restarts.points(config.budget)) if config.restarts else iter(())
    next_fire = next(fires, None)
    rng = np.random.default_rng(config.seed)
    trace = ConvergenceTrace()
    t0 = time.perf_counter()
    trace.append(0, state.best_F, 0.0, config.L0, 0.0, 0.0, 0.0)
    for _ in range(config.budget):
        if (
            config.time_limit is not None
            and time.perf_counter() - t0 > config.time_limit
        ):
            trace.stop_reason = "time limit reached"
            break
        try:
            iterate(state, problem, config)
        except RangeExhaustedError as exc:
            trace.stop_reason = str(exc)
            break
        if next_fire is not None and state.n == next_fire:
            restart(state, config)
            next_fire = next(fires, None)
        if config.check_every and state.n % config.check_every == 0:
            check_estimating_invariants(state, problem, rng, config.check_probes)
        if reporter is not None:
            reporter(state)
        if state.n % config.log_every == 0:
            trace.append(
                state.n, state.best_F, state.A, state.L,
                state.prev_eps, state.prev_delta, time.perf_counter() - t0,
            )
    return trace
