"""Universal fast gradient methods with uniform-convexity momentum.

A numpy library for composite convex optimization ``min f(x) + g(x)`` under
weak smoothness (Hoelder-continuous gradients) and uniform convexity, with
one unified accelerated engine covering the plain universal method, its
strongly convex and uniformly convex momentum variants, scheduled restarts,
and the tolerance schedules that drive them; plus an s-Laplacian FEM
benchmark and growth-sequence verification tooling.
"""

from .engine import (
    BacktrackingError,
    ConvergenceTrace,
    InvariantViolationError,
    RangeExhaustedError,
    SolverConfig,
    SolverState,
    StepCandidate,
    accept_test,
    check_estimating_invariants,
    iterate,
    read_trace,
    restart,
    run,
    solve_momentum,
    strong_sigma,
    trial_step,
)
from .estimating import EstimatingFunction
from .oracle import (
    CompositeProblem,
    DimensionMismatchError,
    RegularityInfo,
    estimate_regularity,
    eval_composite,
    partial_linearization,
    prox,
)
from .schedules import (
    AdaptiveTolerance,
    ConstantTolerance,
    PowerTolerance,
    RestartSchedule,
    ToleranceContext,
    ZeroTolerance,
    restart_points,
    theoretical_restart_constants,
)

__version__ = "0.1.0"
