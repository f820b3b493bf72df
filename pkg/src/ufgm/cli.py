"""Experiment runner: single solves, parameter sweeps, growth-sequence studies,
reference-solution management.  Emits CSV traces only (no plotting).

Configs are flat ``key=value`` text files, one key per line, ``#`` comments.
Exit codes: 0 success, 1 usage error, 2 runtime error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .engine import (
    BacktrackingError,
    InvariantViolationError,
    SolverConfig,
    run,
)
from .oracle import CompositeProblem, eval_composite
from .problems import (
    DEFAULT_MU,
    SLaplacianProblem,
    build_mesh,
    load_reference,
    make_holder_problem,
    make_l1_problem,
    make_mixed_power_problem,
    make_power_problem,
    reference_solution,
)
from .recurrence import (
    claim_target_slope,
    fit_loglog_slope,
    generate_claim_sequence,
)
from .schedules import (
    AdaptiveTolerance,
    ConstantTolerance,
    PowerTolerance,
    RestartSchedule,
)

ALGORITHMS = (
    "universal",
    "scheduled_restart",
    "strong_const",
    "strong_power",
    "strong_adaptive",
    "uniform_const",
    "uniform_power",
    "uniform_adaptive",
)


class UsageError(Exception):
    pass


def parse_config(path) -> dict:
    cfg = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        cfg[key.strip()] = value.strip()
    return cfg


def _fget(cfg, key, default=None):
    if key not in cfg:
        if default is None:
            raise UsageError(f"missing required config key '{key}'")
        return float(default)
    return float(cfg[key])


def build_problem(cfg) -> CompositeProblem:
    kind = cfg.get("problem")
    if kind == "slap":
        h = _fget(cfg, "h")
        s = _fget(cfg, "s")
        b = _fget(cfg, "b", 1.0)
        return SLaplacianProblem(build_mesh(h), s, b).as_composite(
            mu=DEFAULT_MU.get(s)
        )
    if kind == "power":
        dim = int(_fget(cfg, "dim"))
        p_exp = _fget(cfg, "p_exp")
        linear = None
        if "linear" in cfg:
            # scalar strength v maps to a coefficient vector of norm v
            v = float(cfg["linear"])
            linear = v * np.ones(dim) / math.sqrt(dim)
        x0 = np.zeros(dim) + _fget(cfg, "x0_offset", 0.0)
        return make_power_problem(dim, p_exp, linear_coef=linear, x0=x0)
    if kind == "holder":
        dim = int(_fget(cfg, "dim"))
        x0 = np.full(dim, _fget(cfg, "x0_offset", 1.0))
        return make_holder_problem(dim, _fget(cfg, "q_exp"), _fget(cfg, "mu_true"), x0=x0)
    if kind == "mixed":
        dim = int(_fget(cfg, "dim"))
        x0 = np.full(dim, _fget(cfg, "x0_offset", 1.0))
        return make_mixed_power_problem(dim, _fget(cfg, "p_exp"), _fget(cfg, "q_exp"), x0=x0)
    if kind == "l1":
        dim = int(_fget(cfg, "dim"))
        return make_l1_problem(dim, _fget(cfg, "lam"), seed=int(_fget(cfg, "problem_seed", 0)))
    raise UsageError(f"unknown problem kind '{kind}'")


def _default_reference_path(problem: CompositeProblem) -> Path:
    tag = problem.fingerprint.replace(";", "_").replace("=", "-")
    return Path("data/references") / f"{tag}.ref"


def _find_reference(cfg, problem):
    """Reference energy for the error column; None when no cache exists."""
    ref = cfg.get("reference", "auto")
    if ref == "none":
        return None
    path = _default_reference_path(problem) if ref == "auto" else Path(ref)
    if not path.exists():
        if ref != "auto":
            raise UsageError(f"reference cache {path} not found")
        return None
    fingerprint, x, F_value = load_reference(path)
    if fingerprint != problem.fingerprint:
        raise RuntimeError(
            f"reference cache {path} fingerprints {fingerprint!r}, "
            f"problem is {problem.fingerprint!r}"
        )
    return x, F_value


def build_solver(cfg, problem, budget, seed, check_every) -> SolverConfig:
    algo = cfg.get("algorithm")
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm '{algo}' (choose from {', '.join(ALGORITHMS)})")
    reg = problem.regularity

    def resolve_q():
        return _fget(cfg, "q", reg.q if reg and reg.q else None)

    L0 = _fget(cfg, "L0", 1.0)
    log_every = int(_fget(cfg, "log_every", 1.0))

    restarts = None
    if algo in ("universal", "scheduled_restart"):
        p_engine, mu = 2.0, 0.0
    elif algo.startswith("strong"):
        p_engine = 2.0
        mu = _fget(cfg, "mu", reg.mu if reg and reg.mu else None)
    else:
        p_engine = _fget(cfg, "p", reg.p if reg and reg.p else None)
        mu = _fget(cfg, "mu", reg.mu if reg and reg.mu else None)

    if algo == "universal":
        schedule = ConstantTolerance(_fget(cfg, "eps"), split=False)
    elif algo == "scheduled_restart":
        q = resolve_q()
        p_uc = _fget(cfg, "p", reg.p if reg and reg.p else None)
        gamma = _fget(cfg, "gamma", 0.5 * (3.0 * q - 2.0))
        eps0_raw = cfg.get("eps0")
        if eps0_raw == "auto":
            found = _find_reference(cfg, problem)
            if found is None:
                raise RuntimeError(
                    "eps0=auto needs a reference cache for the energy gap"
                )
            gap = eval_composite(problem, np.zeros(problem.dim)) - found[1]
            eps0 = math.exp(-gamma) * gap
        else:
            eps0 = _fget(cfg, "eps0")
        schedule = ConstantTolerance(eps0, split=False)
        restarts = RestartSchedule(
            C=_fget(cfg, "restart_C"), gamma=gamma, ratio=1.0 - q / p_uc
        )
    elif algo == "strong_const":
        schedule = ConstantTolerance(_fget(cfg, "eps"), split=False)
    elif algo == "strong_power":
        schedule = PowerTolerance(_fget(cfg, "C"), 0.0, p=2.0, q=resolve_q())
    elif algo == "strong_adaptive":
        schedule = AdaptiveTolerance(_fget(cfg, "eps0"), 0.0)
    elif algo == "uniform_const":
        schedule = ConstantTolerance(_fget(cfg, "eps"), split=True)
    elif algo == "uniform_power":
        schedule = PowerTolerance(
            _fget(cfg, "C_eps"), _fget(cfg, "C_delta"), p=p_engine, q=resolve_q()
        )
    else:  # uniform_adaptive
        schedule = AdaptiveTolerance(_fget(cfg, "eps0"), _fget(cfg, "delta0"))

    return SolverConfig(
        schedule=schedule,
        p=p_engine,
        mu=mu,
        L0=L0,
        restarts=restarts,
        budget=budget,
        log_every=log_every,
        check_every=check_every,
        seed=seed,
    )


def _start_point(cfg, problem):
    x0 = np.zeros(problem.dim)
    if "x0_offset" in cfg and cfg.get("problem") in ("holder", "mixed", "power"):
        x0 = x0 + float(cfg["x0_offset"])
    return x0


def _run_one(cfg, problem, out_path, budget, seed, check_every):
    solver = build_solver(cfg, problem, budget, seed, check_every)
    x0 = _start_point(cfg, problem)
    trace = run(problem, solver, x0)
    found = _find_reference(cfg, problem)
    f_star = found[1] if found is not None else None
    out_path.parent.mkdir(parents=True, exist_ok=True)
    trace.to_csv(out_path, f_star=f_star)
    return trace, f_star


def cmd_solve(cfg, args) -> int:
    problem = build_problem(cfg)
    budget = args.budget if args.budget is not None else int(_fget(cfg, "budget", 1000))
    name = cfg.get("name", Path(args.config).stem)
    out_dir = Path(args.out)
    check_every = args.check_every if args.check_every is not None else int(
        _fget(cfg, "check_every", 0)
    )
    trace, _ = _run_one(
        cfg, problem, out_dir / f"{name}.csv", budget, args.seed, check_every
    )
    if trace.stop_reason:
        print(f"{name}: stopped early at n={trace.n[-1]}: {trace.stop_reason}")
    print(f"{name}: n={trace.n[-1]} F={trace.F[-1]:.17g} -> {out_dir / (name + '.csv')}")
    return 0


def cmd_sweep(cfg, args) -> int:
    axis = cfg.get("axis")
    if not axis:
        raise UsageError("sweep needs an 'axis' key naming a numeric config key")
    values_raw = cfg.get("values", "")
    values = [v for v in (s.strip() for s in values_raw.split(",")) if v]
    if not values:
        raise UsageError("sweep needs a nonempty 'values' list")
    problem = build_problem(cfg)
    budget = args.budget if args.budget is not None else int(_fget(cfg, "budget", 1000))
    name = cfg.get("name", Path(args.config).stem)
    out_dir = Path(args.out)
    check_every = args.check_every if args.check_every is not None else 0
    rows = []
    for value in values:
        sub = dict(cfg)
        sub[axis] = value
        out_path = out_dir / f"{name}_{axis}={value}.csv"
        trace, f_star = _run_one(sub, problem, out_path, budget, args.seed, check_every)
        final_err = trace.F[-1] - f_star if f_star is not None else float("nan")
        rows.append((value, trace.n[-1], trace.F[-1], final_err))
        print(f"{name}[{axis}={value}]: n={trace.n[-1]} F={trace.F[-1]:.17g}")
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / f"{name}_summary.csv", "w") as fh:
        fh.write(f"{axis},n,F,energy_error\n")
        for value, n, F, err in rows:
            fh.write(f"{value},{n},{F:.17g},{err:.17g}\n")
    return 0


def cmd_recurrence(cfg, args) -> int:
    p_list = [float(s) for s in cfg.get("p_list", "10,100,1000").split(",")]
    q_list = [float(s) for s in cfg.get("q_list", "1,1.5,2").split(",")]
    N = int(_fget(cfg, "N", 10000))
    win_lo = int(_fget(cfg, "window_lo", 100))
    win_hi = int(_fget(cfg, "window_hi", N))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_rows = []
    for p in p_list:
        for q in q_list:
            if not (p > 2.0 >= q >= 1.0):
                print(
                    f"warning: skipping (p={p:g}, q={q:g}); need p > 2 >= q >= 1",
                    file=sys.stderr,
                )
                continue
            seq = generate_claim_sequence(p, q, N)
            with open(out_dir / f"growth_p{p:g}_q{q:g}.csv", "w") as fh:
                fh.write("n,A\n")
                for i, a in enumerate(seq.values, 1):
                    fh.write(f"{i},{a:.17g}\n")
            slope = fit_loglog_slope(seq, (win_lo, win_hi))
            target = claim_target_slope(p, q)
            report_rows.append((p, q, slope, target, slope >= target - 0.02))
            print(f"(p={p:g}, q={q:g}): slope={slope:.4f} target={target:.4f}")
    with open(out_dir / "growth_report.csv", "w") as fh:
        fh.write(f"# fit window n in [{win_lo}, {win_hi}] (chosen default)\n")
        fh.write("p,q,slope,target,pass\n")
        for p, q, slope, target, ok in report_rows:
            fh.write(f"{p:g},{q:g},{slope:.17g},{target:.17g},{int(ok)}\n")
    return 0


def cmd_reference(cfg, args) -> int:
    problem = build_problem(cfg)
    budget = args.budget if args.budget is not None else int(_fget(cfg, "budget", 10**6))
    eps = _fget(cfg, "eps", 1e-24)
    ref = cfg.get("reference", "auto")
    path = _default_reference_path(problem) if ref == "auto" else Path(ref)
    x, F_value = reference_solution(
        problem, path, iterations=budget, eps=eps, L0=_fget(cfg, "L0", 1.0)
    )
    print(f"reference {problem.fingerprint}: F={F_value:.17g} -> {path}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        cfg = parse_config(args.config)
        if args.command == "check-invariants" and args.check_every is None:
            args.check_every = 50
        handler = {
            "solve": cmd_solve,
            "check-invariants": cmd_solve,
            "sweep": cmd_sweep,
            "recurrence": cmd_recurrence,
            "reference": cmd_reference,
        }[args.command]
        return handler(cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (BacktrackingError, RuntimeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    parser = _Parser(prog="ufgm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("solve", "run one configured solve and emit its trace CSV"),
        ("sweep", "run one solve per value of a config key; emit traces + summary"),
        ("recurrence", "generate growth sequences over a (p, q) grid and fit slopes"),
        ("reference", "build (or reuse) a cached reference solution"),
        ("check-invariants", "solve with runtime model checks on (default every 50)"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", required=True, help="flat key=value config file")
        p.add_argument("--out", default="out", help="output directory (default ./out)")
        p.add_argument("--budget", type=int, default=None, help="iteration budget override")
        p.add_argument("--seed", type=int, default=0, help="seed for check probes")
        p.add_argument(
            "--check-every",
            type=int,
            default=None,
            help="run model invariant checks every K iterations (0 = off)",
        )
    return parser


if __name__ == "__main__":
    sys.exit(main())
