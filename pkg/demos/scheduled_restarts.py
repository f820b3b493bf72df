"""Scheduled restarts: fire points, tolerance scaling, and a small run.

Restarts reset the accumulated weight and re-anchor the model at the current
iterate after sum_{k<=r} ceil(C e^{(1-q/p)k}) iterations, scaling the
constant tolerance by e^{-gamma} each time.
"""

import numpy as np

from ufgm import ConstantTolerance, RestartSchedule, SolverConfig, run
from ufgm.schedules import restart_points, theoretical_restart_constants

p, q = 2.0, 1.5
print("fire points for C=2:", restart_points(p, q, 2.0, 1.25, budget=200))

# the analytically justified constants need the condition number and the
# initial energy gap; both are usually only known approximately
eps0, gamma, C = theoretical_restart_constants(p, q, kappa=50.0, energy_gap=1.0)
print(f"theory-backed constants: eps0={eps0:.4g}, gamma={gamma}, C={C:.4g}")

from ufgm.problems import make_holder_problem

x0 = np.full(10, 2.0)
problem = make_holder_problem(10, q_exp=q, mu=0.3, x0=x0)
cfg = SolverConfig(
    schedule=ConstantTolerance(eps0),
    restarts=RestartSchedule(C=C, gamma=gamma, ratio=1.0 - q / p),
    budget=300,
    log_every=50,
)
restarts_seen = []
trace = run(
    problem, cfg, x0,
    reporter=lambda st: restarts_seen.append(st.n) if st.A == 0.0 else None,
)
print("restarted after iterations:", restarts_seen)
print("energy trace:", " ".join(f"{F:.3e}" for F in trace.F))
