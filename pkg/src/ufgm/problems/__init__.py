"""Bundled benchmark problems and reference-solution management."""

from .fem import (
    DEFAULT_MU,
    SLaplacianProblem,
    TriangulationMesh,
    build_mesh,
    slap_energy,
    slap_gradient,
)
from .reference import load_reference, reference_solution, save_reference
from .synthetic import (
    make_holder_problem,
    make_l1_problem,
    make_mixed_power_problem,
    make_power_problem,
    power_problem_minimizer,
)

__all__ = [
    "DEFAULT_MU",
    "SLaplacianProblem",
    "TriangulationMesh",
    "build_mesh",
    "slap_energy",
    "slap_gradient",
    "load_reference",
    "reference_solution",
    "save_reference",
    "make_holder_problem",
    "make_l1_problem",
    "make_mixed_power_problem",
    "make_power_problem",
    "power_problem_minimizer",
]
