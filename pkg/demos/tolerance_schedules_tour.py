"""Tour of the tolerance schedules and the per-run error certificate.

Every run of the engine maintains the accumulated weight A_n and the
weighted tolerance masses; together with the distance of the start to a
minimizer they certify

    F(x_n) - F(x*)  <=  ||x0 - x*||^2 / (2 A_n)  +  (eps_bar + delta_bar)/2.

This demo runs the four schedule families on a uniformly convex problem and
prints the actual error against its certificate.
"""

import numpy as np

from ufgm import (
    AdaptiveTolerance,
    ConstantTolerance,
    PowerTolerance,
    SolverConfig,
    ZeroTolerance,
    run,
)
from ufgm.problems import make_mixed_power_problem

p_exp, q_exp = 4.0, 1.5
x0 = np.ones(12)
problem = make_mixed_power_problem(12, p_exp, q_exp, x0=x0)
x_star = np.zeros(12)  # both power terms are minimized at the origin
f_star = problem.smooth_value(x_star)
dist_sq = float(np.dot(x0 - x_star, x0 - x_star))
mu = problem.regularity.mu

schedules = {
    "constant (split)": ConstantTolerance(1e-6, split=True),
    "power-law": PowerTolerance(1e-4, 1e-4, p=p_exp, q=q_exp),
    "adaptive halving": AdaptiveTolerance(1e-4, 1e-4),
    "zero": ZeroTolerance(),
}

print(f"mixed-power problem, p={p_exp}, q={q_exp}, mu={mu}")
print(f"{'schedule':>18} {'F(x_n)-F*':>12} {'certificate':>12}")
for name, schedule in schedules.items():
    cfg = SolverConfig(schedule=schedule, p=p_exp, mu=mu, budget=500, log_every=500)
    state_box = {}
    trace = run(problem, cfg, x0, reporter=lambda st: state_box.update(st=st))
    st = state_box["st"]
    bound = dist_sq / (2.0 * st.A) + (st.eps_mass + st.delta_mass) / (2.0 * st.A)
    print(f"{name:>18} {trace.F[-1] - f_star:>12.3e} {bound:>12.3e}")
