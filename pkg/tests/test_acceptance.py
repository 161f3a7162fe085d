"""Acceptance suite: one PASS/FAIL line per criterion, printed even under capture."""

import time
from fractions import Fraction as F

import numpy as np
import pytest

from dicke_witness.combinatorics import binomial, lemma10_max, max_split_product
from dicke_witness.dicke import DickeSpec, max_schmidt_sq
from dicke_witness.robustness import (
    p_crit_cor8_closed_form,
    p_crit_generic,
    p_crit_huber,
    p_crit_refined_closed_form,
)
from dicke_witness.upsilon import prop9_witness, upsilon
from dicke_witness.verification import (
    biseparable_sampling_check,
    block_singular_values,
    fully_ppt_check,
)
from dicke_witness.witnesses import (
    DiagonalWitness,
    build_witness,
    cor8_witness,
    prop5_witness,
    projective,
    refined_projective,
    thm6_witness,
)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number:>2}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def _overlap_formula(N, k):
    k = min(k, N - k)
    return F(N - k, N) if 2 * k < N else F(N, 2 * (N - 1))


def test_criterion_01_overlap_closed_forms(report):
    start = time.perf_counter()
    bad = [
        (N, k)
        for N in range(2, 21)
        for k in range(1, N)
        if max_schmidt_sq(DickeSpec(N, k)) != _overlap_formula(N, k)
    ]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    report(1, ok, f"mismatches {bad}, {elapsed:.2f}s")


def test_criterion_02_lemma10(report):
    start = time.perf_counter()
    bad = []
    for N in range(3, 25):
        for k in range(1, (N - 1) // 2 + 1):
            best, argmax = lemma10_max(N, k)
            if best != binomial(N - 1, k) or (1, 0) not in argmax:
                bad.append((N, k, "max"))
            if F(best, binomial(N, k)) > F(N - k, N):
                bad.append((N, k, "bound below half filling"))
    for N in range(2, 25, 2):
        best, _ = max_split_product(N, N // 2)
        if F(best, binomial(N, N // 2)) > F(N, 2 * (N - 1)):
            bad.append((N, N // 2, "bound at half filling"))
    elapsed = time.perf_counter() - start
    report(2, not bad and elapsed < 1.0, f"failures {bad}, {elapsed:.2f}s")


def _admissible_witnesses(n_max):
    for N in range(2, n_max + 1):
        for k in range(1, N):
            spec = DickeSpec(N, k)
            yield projective(spec)
            yield refined_projective(spec)
            yield thm6_witness(spec)
        if N % 2 == 0 and N >= 4:
            yield prop5_witness(N)
        if N >= 3:
            yield cor8_witness(N)
            yield prop9_witness(N)


def test_criterion_03_fully_ppt(report):
    start = time.perf_counter()
    failures, count = [], 0
    for W in _admissible_witnesses(10):
        count += 1
        rep = fully_ppt_check(W, tol=1e-9)
        if not rep.passed:
            failures.append((W.family, W.spec.n, W.spec.k, rep.min_eigenvalue))
    zero = DiagonalWitness.from_floats(DickeSpec(2, 1), "projective", [0.0, 0.0, 0.0])
    control = fully_ppt_check(zero, tol=1e-9)
    control_ok = not control.passed and abs(control.min_eigenvalue + 0.5) <= 1e-10
    elapsed = time.perf_counter() - start
    report(
        3,
        not failures and control_ok,
        f"{count} witnesses, failures {failures}, zero control {control.min_eigenvalue:.12f}, {elapsed:.0f}s",
    )


def test_criterion_04_block_singular_values(report):
    bad, blocks = [], 0
    for N in range(2, 11):
        for k in range(1, N // 2 + 1):
            for delta in range(1, k + 1):
                for x in range(1, N // 2 + 1):
                    blocks += 1
                    computed, predicted = block_singular_values(DickeSpec(N, k), delta, x)
                    if len(computed) != len(predicted) or np.any(
                        np.abs(np.asarray(computed) - np.asarray(predicted)) > 1e-10
                    ):
                        bad.append((N, k, delta, x))
    report(4, not bad, f"{blocks} blocks, mismatches {bad}")


def test_criterion_05_robustness_rationals(report):
    spec = DickeSpec(4, 2)
    values = (
        p_crit_generic(projective(spec)).exact,
        p_crit_generic(prop5_witness(4)).exact,
        p_crit_generic(thm6_witness(spec)).exact,
        p_crit_huber(4, 2),
    )
    examples_ok = values == (F(16, 45), F(8, 21), F(8, 19), F(8, 17))
    bad = [
        (N, k)
        for N in range(2, 21)
        for k in range(1, N // 2 + 1)
        if p_crit_refined_closed_form(N, k) != p_crit_generic(refined_projective(DickeSpec(N, k))).exact
    ]
    report(5, examples_ok and not bad, f"values {[str(v) for v in values]}, identity failures {bad}")


def test_criterion_06_fig2_ordering(report):
    bad = []
    for N in range(4, 15, 2):
        spec = DickeSpec(N, N // 2)
        a = p_crit_generic(projective(spec)).p_crit
        b = p_crit_generic(prop5_witness(N)).p_crit
        c = p_crit_generic(thm6_witness(spec)).p_crit
        if not (b - a >= 1e-9 and c - b >= 1e-9):
            bad.append((N, a, b, c))
    report(6, not bad, f"violations {bad}")


def test_criterion_07_fig3b_exception(report):
    weaker = [
        (N, k)
        for N in range(4, 17)
        for k in range(1, N // 2 + 1)
        if not p_crit_generic(thm6_witness(DickeSpec(N, k))).p_crit > p_crit_huber(N, k)
    ]
    at_42 = p_crit_generic(thm6_witness(DickeSpec(4, 2))).exact
    ok = weaker == [(4, 2)] and at_42 == F(8, 19) < p_crit_huber(4, 2) == F(8, 17)
    report(7, ok, f"thm6 not above reference at {weaker}; (4,2): {at_42} vs {p_crit_huber(4, 2)}")


def test_criterion_08_cor8_cross_checks(report):
    worst_w, worst_p = 0.0, 0.0
    for N in range(3, 13):
        diff = np.abs(np.subtract(cor8_witness(N).omegas, thm6_witness(DickeSpec(N, 1)).omegas))
        worst_w = max(worst_w, float(diff.max()))
        worst_p = max(worst_p, abs(p_crit_cor8_closed_form(N) - p_crit_generic(cor8_witness(N)).p_crit))
    report(8, worst_w <= 1e-12 and worst_p <= 1e-12, f"max coefficient gap {worst_w:.1e}, max p_crit gap {worst_p:.1e}")


def test_criterion_09_prop9_suite(report):
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    shift_err = 0.0
    for _ in range(100):
        N = int(rng.integers(3, 11))
        w = rng.uniform(0, 2, 3)
        eps = rng.uniform(0, 1)
        base = upsilon(N, w)
        shifted = upsilon(N, w + eps)
        shift_err = max(shift_err, abs(shifted.value - (base.value - eps)) / (2 * base.refine_tol))
    # Υ(cor8) is exactly zero; floating evaluation leaves O(1e-16) noise
    cor8_upsilon = max(upsilon(N, cor8_witness(N).omegas[:3]).value for N in range(3, 11))
    prop9_upsilon, worst_sample, order_bad = 0.0, np.inf, []
    for N in range(3, 11):
        W = prop9_witness(N)
        prop9_upsilon = max(prop9_upsilon, abs(upsilon(N, W.omegas[:3]).value))
        worst_sample = min(worst_sample, biseparable_sampling_check(W, samples=100_000, seed=N))
        if p_crit_generic(W).p_crit < p_crit_generic(cor8_witness(N)).p_crit:
            order_bad.append(N)
    elapsed = time.perf_counter() - start
    ok = (
        shift_err <= 1.0
        and cor8_upsilon <= 1e-12
        and prop9_upsilon <= 1e-9
        and worst_sample >= -1e-9
        and not order_bad
        and elapsed < 300
    )
    report(
        9,
        ok,
        f"shift error {shift_err:.2f} x 2e-10, max Υ(cor8) {cor8_upsilon:.1e}, max |Υ(prop9)| {prop9_upsilon:.1e}, "
        f"min sampled {worst_sample:.2e}, ordering failures {order_bad}, {elapsed:.0f}s",
    )


def test_criterion_10_asymptotics(report):
    bad = []
    for k in (1, 2, 3):
        values = [(N, p_crit_refined_closed_form(N, k)) for N in range(2 * k + 1, 25)]
        bad += [(k, n2) for (_, a), (n2, b) in zip(values, values[1:]) if not b > a]
    report(10, not bad, f"non-increasing steps (k, N) {bad}")
