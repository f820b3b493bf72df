"""Reference-solution cache for energy-error reporting.

References are computed by a long plain universal-method run (no convexity
momentum) at a very tight constant tolerance and persisted so the build cost
is paid once.  The cache file is a self-describing text header (format tag,
problem fingerprint, dimension, achieved energy) followed by the raw
little-endian float64 coordinates; writes are atomic (temp file + rename).
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from ..engine import SolverConfig, run
from ..oracle import CompositeProblem, Vector, eval_composite
from ..schedules import ConstantTolerance

_MAGIC = "ufgm-reference 1"


def save_reference(path, fingerprint: str, x: Vector, F_value: float) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = (
        f"{_MAGIC}\n"
        f"fingerprint: {fingerprint}\n"
        f"dim: {len(x)}\n"
        f"F: {F_value:.17g}\n"
        "---\n"
    )
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header.encode("ascii"))
            fh.write(np.asarray(x, dtype="<f8").tobytes())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_reference(path) -> tuple[str, Vector, float]:
    """Returns (fingerprint, solution, achieved energy)."""
    with open(path, "rb") as fh:
        magic = fh.readline().decode("ascii").strip()
        if magic != _MAGIC:
            raise ValueError(f"{path}: not a reference cache (got {magic!r})")
        fingerprint = fh.readline().decode("ascii").strip().removeprefix("fingerprint: ")
        dim = int(fh.readline().decode("ascii").strip().removeprefix("dim: "))
        F_value = float(fh.readline().decode("ascii").strip().removeprefix("F: "))
        sep = fh.readline().decode("ascii").strip()
        if sep != "---":
            raise ValueError(f"{path}: malformed header")
        x = np.frombuffer(fh.read(8 * dim), dtype="<f8").copy()
    if len(x) != dim:
        raise ValueError(f"{path}: truncated payload")
    return fingerprint, x, F_value


def reference_solution(
    problem: CompositeProblem,
    cache_path,
    iterations: int = 10**6,
    eps: float = 1e-24,
    L0: float = 1.0,
    x0: Vector | None = None,
) -> tuple[Vector, float]:
    """Load the cached reference for this problem, or compute and persist it.

    A cached file whose fingerprint does not match the problem is recomputed.
    Returns (solution, achieved energy).
    """
    cache_path = Path(cache_path)
    if cache_path.exists():
        try:
            fingerprint, x, F_value = load_reference(cache_path)
            if fingerprint == problem.fingerprint:
                return x, F_value
        except ValueError:
            pass
    if x0 is None:
        x0 = np.zeros(problem.dim)
    config = SolverConfig(
        schedule=ConstantTolerance(eps, split=False),
        p=2.0,
        mu=0.0,
        L0=L0,
        budget=iterations,
        log_every=max(1, iterations),
    )
    last = _LastIterate()
    run(problem, config, x0, reporter=last)
    best = last.x if last.x is not None else x0
    F_value = eval_composite(problem, best)
    save_reference(cache_path, problem.fingerprint, best, F_value)
    return best, F_value


class _LastIterate:
    """Reporter keeping the final iterate without storing the trajectory."""

    def __init__(self):
        self.x = None

    def __call__(self, state):
        self.x = state.x
