from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dicke_witness.combinatorics import (
    BinomialTable,
    binomial,
    exact_sqrt,
    lemma10_max,
    max_split_product,
    vandermonde_sum,
)
from dicke_witness.errors import InvalidArgument, OutOfDomain


@pytest.mark.parametrize("n, r, expected", [(4, 2, 6), (10, 0, 1), (6, 7, 0), (5, -1, 0)])
def test_binomial_examples(n, r, expected):
    assert binomial(n, r) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(InvalidArgument):
        binomial(-1, 0)


def test_table_matches_pascal_and_symmetry():
    table = BinomialTable(60)
    for n in range(1, 61):
        for r in range(n + 1):
            assert table(n, r) == table(n, n - r) == binomial(n, r)
            if 1 <= r <= n - 1:
                assert table(n, r) == table(n - 1, r - 1) + table(n - 1, r)
    assert table(10, 11) == 0 and table(10, -2) == 0


def test_large_binomials_are_exact():
    # well beyond 64-bit range
    assert binomial(200, 100) == BinomialTable(200)(200, 100)
    assert binomial(200, 100) > 2**190


@pytest.mark.parametrize(
    "N, k, expected",
    [(5, 2, 6), (4, 1, 3), (20, 9, 92378)],
)
def test_lemma10_examples(N, k, expected):
    best, argmax = lemma10_max(N, k)
    assert best == expected == binomial(N - 1, k)
    assert (1, 0) in argmax


def test_lemma10_domain():
    with pytest.raises(OutOfDomain):
        lemma10_max(6, 3)


def test_lemma10_all_small_cases():
    for N in range(2, 25):
        for k in range(1, (N - 1) // 2 + 1):
            best, argmax = lemma10_max(N, k)
            assert best == binomial(N - 1, k)
            assert (1, 0) in argmax
            # refined overlap bound below half filling
            assert Fraction(best, binomial(N, k)) <= Fraction(N - k, N)


def test_half_filling_overlap_bound():
    for N in range(4, 25, 2):
        best, _ = max_split_product(N, N // 2)
        assert Fraction(best, binomial(N, N // 2)) <= Fraction(N, 2 * (N - 1))


@pytest.mark.parametrize("x1, x2, delta, expected", [(2, 1, 1, 3), (3, 0, 0, 1), (5, 5, 2, 120)])
def test_vandermonde_examples(x1, x2, delta, expected):
    assert vandermonde_sum(x1, x2, delta) == expected


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 6))
def test_vandermonde_identity(x1, x2, delta):
    assert vandermonde_sum(x1, x2, delta) == binomial(x1 + x2, x2 + delta)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(3, 2)) is None
    assert exact_sqrt(Fraction(0)) == 0
