"""The unified engine must coincide with the literal baseline transcriptions
under the documented parameter reductions, iterate for iterate."""

import numpy as np
import pytest

from ufgm.engine import SolverConfig, run
from ufgm.problems import make_l1_problem, make_power_problem
from ufgm.schedules import ConstantTolerance

from reference_algs import strong_method, universal_method


def engine_iterates(problem, x0, L0, eps, mu, iterations):
    xs = [np.array(x0, dtype=float)]
    cfg = SolverConfig(
        schedule=ConstantTolerance(eps),
        p=2.0,
        mu=mu,
        L0=L0,
        budget=iterations,
        log_every=max(1, iterations),
    )
    run(problem, cfg, x0, reporter=lambda s: xs.append(s.x.copy()))
    return xs


def assert_same_trajectory(xs_a, xs_b):
    assert len(xs_a) == len(xs_b), f"lengths differ: {len(xs_a)} vs {len(xs_b)}"
    for k, (a, b) in enumerate(zip(xs_a, xs_b)):
        tol = 1e-12 * (1.0 + np.linalg.norm(a))
        assert np.linalg.norm(a - b) <= tol, f"iterate {k} differs"


@pytest.mark.parametrize("kind", ["quadratic", "l1"])
def test_engine_reduces_to_universal_method(kind):
    if kind == "quadratic":
        problem = make_power_problem(8, 2.0, linear_coef=np.linspace(0.2, 1.0, 8))
    else:
        problem = make_l1_problem(8, 0.5, seed=4)
    x0 = np.full(8, 2.0)
    xs_engine = engine_iterates(problem, x0, L0=1.0, eps=1e-3, mu=0.0, iterations=500)
    xs_ref, stop = universal_method(problem, x0, L0=1.0, eps=1e-3, iterations=500)
    assert stop == ""
    assert_same_trajectory(xs_engine, xs_ref)


@pytest.mark.parametrize("kind", ["quadratic", "l1"])
def test_engine_reduces_to_strong_method(kind):
    # both sides may leave float64 range on these fast linear-rate runs; they
    # must then stop at the same iterate
    if kind == "quadratic":
        problem = make_power_problem(8, 2.0, linear_coef=np.linspace(0.2, 1.0, 8))
        mu = problem.regularity.mu
    else:
        problem = make_l1_problem(8, 0.5, seed=4)
        mu = problem.regularity.mu
    x0 = np.full(8, 2.0)
    xs_engine = engine_iterates(problem, x0, L0=1.0, eps=1e-3, mu=mu, iterations=500)
    xs_ref, _ = strong_method(problem, x0, L0=1.0, mu=mu, eps=1e-3, iterations=500)
    assert_same_trajectory(xs_engine, xs_ref)
