import math

import numpy as np
import pytest

from ufgm.recurrence import (
    GrowthSequence,
    check_lemma_bounds,
    claim_exponents,
    claim_target_slope,
    fit_loglog_slope,
    generate_claim_sequence,
    generate_equality_sequence,
)


def test_sublinear_gamma_zero_is_arithmetic():
    seq = generate_equality_sequence("sublinear", 0.0, 0.5, 1.0, 10)
    assert np.allclose(seq.values, 1.0 + 0.5 * np.arange(10))


def test_linear_gamma_one_is_geometric():
    seq = generate_equality_sequence("linear", 1.0, 0.25, 2.0, 12)
    assert np.allclose(seq.values, 2.0 * 1.25 ** np.arange(12), rtol=1e-14)


def test_linear_gamma_two_equality_residual():
    seq = generate_equality_sequence("linear", 2.0, 0.01, 1.0, 100)
    A = seq.values
    res = (A[1:] - A[:-1]) ** 2 - 0.01 * A[:-1] * A[1:]
    scale = 0.01 * A[:-1] * A[1:]
    assert np.max(np.abs(res) / scale) <= 1e-10


def test_linear_fractional_gamma_residual():
    seq = generate_equality_sequence("linear", 1.37, 0.3, 0.5, 60)
    A = seq.values
    res = (A[1:] - A[:-1]) ** 1.37 - 0.3 * A[:-1] * A[1:] ** 0.37
    scale = 0.3 * A[:-1] * A[1:] ** 0.37
    assert np.max(np.abs(res) / scale) <= 1e-10


def test_generate_rejects_bad_parameters():
    with pytest.raises(ValueError):
        generate_equality_sequence("linear", 0.5, 1.0, 1.0, 5)
    with pytest.raises(ValueError):
        generate_equality_sequence("sublinear", 1.0, 1.0, 1.0, 5)
    with pytest.raises(ValueError):
        generate_equality_sequence("other", 1.0, 1.0, 1.0, 5)
    with pytest.raises(ValueError):
        generate_equality_sequence("linear", 1.0, -1.0, 1.0, 5)


def test_bound_gamma_one_has_slack():
    # premise ratio (1 + C) strictly beats the bound base (1 + C/2)
    seq = generate_equality_sequence("linear", 1.0, 0.8, 1.0, 50)
    report = check_lemma_bounds(seq)
    assert report.passed and report.min_slack >= 1.0


def test_bound_sublinear_example():
    seq = generate_equality_sequence("sublinear", 0.5, 1.0, 1.0, 10**4)
    report = check_lemma_bounds(seq)
    assert report.passed
    assert report.min_slack >= 1.0 - 1e-10


def test_bound_huge_A1_selects_first_branch():
    seq = generate_equality_sequence("sublinear", 0.5, 0.3, 1e6, 100)
    report = check_lemma_bounds(seq)
    assert report.passed


def test_bound_random_draws(rng):
    for _ in range(50):
        gamma = float(rng.uniform(1.0, 2.0))
        C = float(rng.uniform(0.01, 1.5))
        A1 = float(rng.uniform(0.1, 10.0))
        seq = generate_equality_sequence("linear", gamma, C, A1, 150)
        assert check_lemma_bounds(seq).min_slack >= 1.0 - 1e-10
    for _ in range(50):
        gamma = float(rng.uniform(0.0, 0.85))
        C = float(rng.uniform(0.01, 2.0))
        A1 = float(rng.uniform(0.1, 10.0))
        seq = generate_equality_sequence("sublinear", gamma, C, A1, 2000)
        assert check_lemma_bounds(seq).min_slack >= 1.0 - 1e-10


def test_claim_sequence_starts_at_one():
    seq = generate_claim_sequence(10.0, 2.0, 100)
    assert seq.values[0] == 1.0
    assert np.all(np.diff(seq.values) > 0)


def test_claim_sequence_residual_vs_direct_sum():
    p, q, N = 7.0, 1.5, 1500
    seq = generate_claim_sequence(p, q, N)
    A = np.concatenate([[0.0], seq.values])  # A_0 = 0
    e_base, e_sum = claim_exponents(p, q)
    # direct O(N^2) evaluation of the running sum
    inc = np.diff(A)
    terms = inc ** (2.0 / p) / A[1:] ** e_sum
    for n in (1, 10, 100, 700, N - 1):
        S_n = terms[:n].sum()
        lhs = (A[n + 1] - A[n]) ** 2
        rhs = A[n] ** e_base * S_n
        assert lhs == pytest.approx(rhs, rel=1e-10)


def test_claim_sequence_rejects_bad_pq():
    with pytest.raises(ValueError):
        generate_claim_sequence(2.0, 1.5, 10)
    with pytest.raises(ValueError):
        generate_claim_sequence(10.0, 2.5, 10)


def test_slope_exact_power_law():
    n = np.arange(1, 2001, dtype=float)
    seq = GrowthSequence(values=n**3)
    assert fit_loglog_slope(seq, (10, 2000)) == pytest.approx(3.0, abs=1e-9)


def test_slope_constant_sequence():
    seq = GrowthSequence(values=np.full(100, 2.5))
    assert fit_loglog_slope(seq, (1, 100)) == pytest.approx(0.0, abs=1e-12)


def test_slope_window_too_short():
    seq = GrowthSequence(values=np.arange(1.0, 50.0))
    with pytest.raises(ValueError):
        fit_loglog_slope(seq, (7, 7))


def test_claim_slope_meets_target():
    seq = generate_claim_sequence(10.0, 1.5, 10**4)
    slope = fit_loglog_slope(seq, (100, 10**4))
    target = claim_target_slope(10.0, 1.5)
    assert target == pytest.approx(10 * 2.5 / 17, rel=1e-12)
    assert slope >= target - 0.02


def test_claim_reduces_to_sublinear_at_p2():
    # formally substituting p = 2 collapses the weighted sum: the summand
    # weight exponent vanishes and the sum telescopes to A_n, giving
    # A_{n+1} - A_n = A_n^((4q-4)/(3q-2))
    for q in (1.0, 1.2, 1.5, 1.9):
        e_base, e_sum = claim_exponents(2.0, q)
        assert e_sum == 0.0
        gamma = (4.0 * q - 4.0) / (3.0 * q - 2.0)
        assert 0.5 * (e_base + 1.0) == pytest.approx(gamma, rel=1e-12)

    # numerically at q = 1.5: literal p = 2 recurrence == equality sequence
    q = 1.5
    e_base, _ = claim_exponents(2.0, q)
    A = [1.0]
    S = 1.0  # telescoped sum equals A_n with A_1 = 1
    for _ in range(200):
        inc = math.sqrt(A[-1] ** e_base * S)
        A.append(A[-1] + inc)
        S += inc
    ref = generate_equality_sequence(
        "sublinear", (4 * q - 4) / (3 * q - 2), 1.0, 1.0, 201
    )
    assert np.allclose(A, ref.values, rtol=1e-12)
