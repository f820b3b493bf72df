"""The s-Laplacian finite-element benchmark.

Builds the P1 discretization of (1/s) int |grad u|^s - int b*u on the unit
square, solves it with two schedules, and reports energy errors against a
longer reference run.  A coarse mesh keeps this demo fast; the full
benchmark (h = 2^-5) is driven by the checked-in configs via the CLI.
"""

import numpy as np

from ufgm import ConstantTolerance, PowerTolerance, SolverConfig, run
from ufgm.problems import DEFAULT_MU, SLaplacianProblem, build_mesh

s = 1.5
mesh = build_mesh(2**-4)
fem = SLaplacianProblem(mesh, s, b=1.0)
problem = fem.as_composite(mu=DEFAULT_MU[s])
print(f"s = {s}: {len(mesh.triangles)} triangles, {problem.dim} interior unknowns")
print(f"implied exponents: q = {problem.regularity.q}, p = {problem.regularity.p}")

x0 = np.zeros(problem.dim)

# reference: long plain run at a very tight tolerance
ref_cfg = SolverConfig(schedule=ConstantTolerance(1e-24), budget=20000, log_every=20000)
f_star = run(problem, ref_cfg, x0).F[-1]
print(f"reference energy: {f_star:.12g}\n")

mu = DEFAULT_MU[s]
runs = {
    "universal, eps=1e-10": SolverConfig(
        schedule=ConstantTolerance(1e-10), budget=2000, log_every=250
    ),
    "strong momentum, power tolerance": SolverConfig(
        schedule=PowerTolerance(1e-4, 0.0, p=2.0, q=s),
        mu=mu, p=2.0, budget=2000, log_every=250,
    ),
}
for name, cfg in runs.items():
    trace = run(problem, cfg, x0)
    errs = " ".join(f"{F - f_star:9.2e}" for F in trace.F[1:])
    print(f"{name}\n  error every 250 iters: {errs}")
