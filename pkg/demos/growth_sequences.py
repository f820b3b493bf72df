"""Growth-sequence toolkit: equality sequences, lower-bound reports, slopes.

The solvers' complexity statements rest on two recurrence lemmas (geometric
and sublinear growth) and on the asymptotics of a composite recurrence.
This demo generates extremal sequences for each and verifies the bounds.
"""

from ufgm.recurrence import (
    check_lemma_bounds,
    claim_target_slope,
    fit_loglog_slope,
    generate_claim_sequence,
    generate_equality_sequence,
)

# geometric-growth lemma: (A_{n+1} - A_n)^gamma >= C A_n A_{n+1}^(gamma-1)
seq = generate_equality_sequence("linear", gamma=1.6, C=0.2, A1=1.0, N=200)
rep = check_lemma_bounds(seq)
print(f"linear kind:    min slack {rep.min_slack:.12f} at n={rep.argmin} "
      f"({'ok' if rep.passed else 'VIOLATED'})")

# sublinear-growth lemma: A_{n+1} - A_n >= C A_n^gamma with gamma < 1
seq = generate_equality_sequence("sublinear", gamma=0.5, C=1.0, A1=1.0, N=10**4)
rep = check_lemma_bounds(seq)
print(f"sublinear kind: min slack {rep.min_slack:.12f} at n={rep.argmin} "
      f"({'ok' if rep.passed else 'VIOLATED'})")

# composite recurrence: fitted log-log slope should beat p(3q-2)/(2(p-q))
print(f"\n{'p':>6} {'q':>4} {'slope':>8} {'target':>8}")
for p in (10.0, 100.0, 1000.0):
    for q in (1.0, 1.5, 2.0):
        seq = generate_claim_sequence(p, q, 10**4)
        slope = fit_loglog_slope(seq, (100, 10**4))
        print(f"{p:>6g} {q:>4g} {slope:>8.4f} {claim_target_slope(p, q):>8.4f}")
