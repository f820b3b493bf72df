import numpy as np
import pytest

from ufgm.oracle import CompositeProblem
from ufgm.problems import SLaplacianProblem, build_mesh


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def quadratic_1d():
    """f(x) = x^2/2, g = 0."""
    return CompositeProblem(
        dim=1,
        smooth_value=lambda x: 0.5 * float(x[0] ** 2),
        smooth_gradient=lambda x: x.copy(),
    )


def quadratic_nd(dim, center=None):
    """f(x) = 0.5 ||x - c||^2, g = 0."""
    c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)

    return CompositeProblem(
        dim=dim,
        smooth_value=lambda x: 0.5 * float(np.dot(x - c, x - c)),
        smooth_gradient=lambda x: x - c,
    )


def l1_quadratic(dim, lam):
    """f(x) = 0.5 ||x||^2, g(x) = lam ||x||_1 with soft-threshold prox."""

    def g_prox(center, weight):
        t = weight * lam
        return np.sign(center) * np.maximum(np.abs(center) - t, 0.0)

    return CompositeProblem(
        dim=dim,
        smooth_value=lambda x: 0.5 * float(np.dot(x, x)),
        smooth_gradient=lambda x: x.copy(),
        nonsmooth_value=lambda x: lam * float(np.abs(x).sum()),
        nonsmooth_prox=g_prox,
    )


def box_indicator(dim, radius):
    """g = indicator of the box [-radius, radius]^dim; prox = clipping."""
    return CompositeProblem(
        dim=dim,
        smooth_value=lambda x: 0.5 * float(np.dot(x, x)),
        smooth_gradient=lambda x: x.copy(),
        nonsmooth_value=lambda x: 0.0 if np.all(np.abs(x) <= radius) else np.inf,
        nonsmooth_prox=lambda c, w: np.clip(c, -radius, radius),
    )


def grid_prox_1d(g_scalar, c, tau, lo, hi, num=4001):
    """Dense grid search of argmin tau*g(x) + (x-c)^2/2 per coordinate."""
    xs = np.linspace(lo, hi, num)
    vals = tau * g_scalar(xs) + 0.5 * (xs - c) ** 2
    return xs[int(np.argmin(vals))], (hi - lo) / (num - 1)


def assemble_stiffness(mesh):
    """Independent P1 stiffness assembly (dense, loop-based) on interior dofs."""
    nv = len(mesh.vertices)
    K = np.zeros((nv, nv))
    for tri in mesh.triangles:
        pts = mesh.vertices[tri]
        p1, p2, p3 = pts
        det = (p2[0] - p1[0]) * (p3[1] - p1[1]) - (p3[0] - p1[0]) * (p2[1] - p1[1])
        area = 0.5 * det
        grads = np.array(
            [
                [p2[1] - p3[1], p3[0] - p2[0]],
                [p3[1] - p1[1], p1[0] - p3[0]],
                [p1[1] - p2[1], p2[0] - p1[0]],
            ]
        ) / det
        K[np.ix_(tri, tri)] += area * grads @ grads.T
    idx = np.flatnonzero(mesh.interior_mask)
    return K[np.ix_(idx, idx)]


@pytest.fixture(scope="session")
def coarse_slap15():
    return SLaplacianProblem(build_mesh(2**-3), 1.5, 1.0)


REPO = __import__("pathlib").Path(__file__).resolve().parent.parent
REFERENCE_DIR = REPO / "data" / "references"


def benchmark_reference(s):
    """(x*, F*) for the benchmark problem, built once and cached on disk."""
    from ufgm.problems import reference_solution

    prob = SLaplacianProblem(build_mesh(2**-5), s, 1.0).as_composite()
    tag = prob.fingerprint.replace(";", "_").replace("=", "-")
    return reference_solution(prob, REFERENCE_DIR / f"{tag}.ref")


@pytest.fixture(scope="session")
def slap15_reference():
    return benchmark_reference(1.5)


@pytest.fixture(scope="session")
def slap4_reference():
    return benchmark_reference(4.0)
