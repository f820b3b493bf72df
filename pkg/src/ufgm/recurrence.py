"""Growth-sequence tooling: recurrence generators, lower-bound checks, slope fits.

Two recurrence families are generated with their defining inequality held as
an equality (the extremal case, where the closed-form lower bounds are
tightest):

  linear kind     (A_{n+1} - A_n)^gamma = C * A_n * A_{n+1}^(gamma-1),  1 <= gamma <= 2
  sublinear kind   A_{n+1} - A_n        = C * A_n^gamma,                0 <= gamma < 1

plus the composite recurrence behind the near-optimal power-schedule growth
claim, whose squared increment couples to a running weighted sum of all past
increments.  Everything is float64; generation stops early on overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

_OVERFLOW = 1e290


@dataclass
class GrowthSequence:
    values: np.ndarray                 # A_1, A_2, ... (1-based indexing by n)
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class BoundReport:
    kind: str
    min_slack: float                   # min over n of A_n / bound_n
    argmin: int                        # 1-based n attaining it
    checked: int
    passed: bool


def _linear_next(A: float, gamma: float, C: float) -> float:
    """Solve (u - A)^gamma = C * A * u^(gamma-1) for u > A."""
    if gamma == 1.0:
        return A * (1.0 + C)
    if gamma == 2.0:
        # u^2 - (2 + C) A u + A^2 = 0, larger root
        half = 0.5 * (2.0 + C) * A
        return half + math.sqrt(half * half - A * A)

    def res(u):
        return gamma * math.log(u - A) - math.log(C * A) - (gamma - 1.0) * math.log(u)

    lo = A * (1.0 + 1e-15)
    hi = A * (1.0 + max(C, 1.0))
    while res(hi) < 0:
        hi *= 2.0
        if hi > _OVERFLOW:
            raise RuntimeError("bracketing failed: next term beyond overflow guard")
    return brentq(res, lo, hi, xtol=1e-300, rtol=1e-14)


def generate_equality_sequence(
    kind: str, gamma: float, C: float, A1: float, N: int
) -> GrowthSequence:
    """Sequence of length N satisfying the recurrence premise with equality.

    The linear kind solves its implicit step equation by safeguarded root
    finding (closed forms at gamma = 1 and 2); the sublinear kind is
    explicit.  Stops early if values overflow the float64 guard.
    """
    if not (C > 0 and A1 > 0):
        raise ValueError("need C > 0 and A1 > 0")
    if kind == "linear":
        if not 1.0 <= gamma <= 2.0:
            raise ValueError("linear kind needs 1 <= gamma <= 2")
    elif kind == "sublinear":
        if not 0.0 <= gamma < 1.0:
            raise ValueError("sublinear kind needs 0 <= gamma < 1")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    values = [A1]
    for n in range(1, N):
        A = values[-1]
        if kind == "linear":
            try:
                nxt = _linear_next(A, gamma, C)
            except RuntimeError as exc:
                raise RuntimeError(f"step n={n}: {exc}") from None
        else:
            nxt = A + C * A**gamma
        if not math.isfinite(nxt) or nxt > _OVERFLOW:
            break
        values.append(nxt)
    return GrowthSequence(
        values=np.array(values),
        meta={"kind": kind, "gamma": gamma, "C": C, "A1": A1, "N": N},
    )


def check_lemma_bounds(seq: GrowthSequence) -> BoundReport:
    """Verify the closed-form lower bound of the sequence's kind at every index.

    linear kind:    A_n >= A_1 (1 + C^(1/gamma)/2)^(gamma (n-1))
    sublinear kind: A_n >= min{A_1, (C / (2 (2^(1/(1-gamma)) - 1)))^(1/(1-gamma))} n^(1/(1-gamma))

    Slack ratios are formed in log space so geometric growth cannot
    overflow the comparison.
    """
    kind = seq.meta["kind"]
    gamma = seq.meta["gamma"]
    C = seq.meta["C"]
    A1 = seq.meta["A1"]
    n = np.arange(1, len(seq) + 1, dtype=float)
    if kind == "linear":
        log_bound = math.log(A1) + gamma * (n - 1.0) * math.log1p(0.5 * C ** (1.0 / gamma))
    else:
        expo = 1.0 / (1.0 - gamma)
        coef = min(A1, (C / (2.0 * (2.0**expo - 1.0))) ** expo)
        log_bound = math.log(coef) + expo * np.log(n)
    log_slack = np.log(seq.values) - log_bound
    i = int(np.argmin(log_slack))
    min_slack = float(np.exp(log_slack[i]))
    return BoundReport(
        kind=kind,
        min_slack=min_slack,
        argmin=i + 1,
        checked=len(seq),
        passed=min_slack >= 1.0 - 1e-10,
    )


def claim_exponents(p: float, q: float) -> tuple[float, float]:
    """(base exponent, sum-term exponent) of the composite recurrence."""
    e_opt = 2.0 * (p - q) / (p * (3.0 * q - 2.0))
    e_base = 1.0 - (2.0 - q) / q * (1.0 + e_opt)
    e_sum = (p - 2.0) / p * e_opt
    return e_base, e_sum


def generate_claim_sequence(p: float, q: float, N: int) -> GrowthSequence:
    """Composite recurrence with A_1 = 1 (A_0 = 0 so the first summand is 1):

        (A_{n+1} - A_n)^2 = A_n^e_base * sum_{j<=n} (A_j - A_{j-1})^(2/p) / A_j^e_sum

    The sum is carried incrementally, O(1) per step.
    """
    if not (p > 2.0 >= q >= 1.0):
        raise ValueError("need p > 2 >= q >= 1")
    e_base, e_sum = claim_exponents(p, q)
    values = np.empty(N)
    values[0] = 1.0
    running = 1.0       # (A_1 - A_0)^(2/p) / A_1^e_sum with A_1 = 1
    out = N
    for i in range(1, N):
        A = values[i - 1]
        inc = math.sqrt(A**e_base * running)
        nxt = A + inc
        if not math.isfinite(nxt) or nxt > _OVERFLOW:
            out = i
            break
        values[i] = nxt
        running += inc ** (2.0 / p) / nxt**e_sum
    return GrowthSequence(
        values=values[:out], meta={"kind": "claim", "p": p, "q": q, "N": N}
    )


def claim_target_slope(p: float, q: float) -> float:
    """Asymptotic growth exponent the composite recurrence is expected to beat."""
    return p * (3.0 * q - 2.0) / (2.0 * (p - q))


def fit_loglog_slope(seq: GrowthSequence, window: tuple[int, int]) -> float:
    """Least-squares slope of log A_n against log n over n in [window[0], window[1]]."""
    lo, hi = window
    lo = max(1, lo)
    hi = min(len(seq), hi)
    if hi - lo + 1 < 2:
        raise ValueError(f"window [{lo}, {hi}] holds fewer than 2 points")
    n = np.arange(lo, hi + 1, dtype=float)
    vals = seq.values[lo - 1 : hi]
    if np.any(vals <= 0):
        raise ValueError("slope fit needs positive values")
    return float(np.polyfit(np.log(n), np.log(vals), 1)[0])
