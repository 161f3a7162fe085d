"""Exact binomial arithmetic and brute-force combinatorial oracles.

Everything here works with Python integers and :class:`fractions.Fraction`,
so comparisons are exact at any qubit number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidArgument, OutOfDomain

__all__ = [
    "BinomialTable",
    "binomial",
    "max_split_product",
    "lemma10_max",
    "vandermonde_sum",
    "exact_sqrt",
]


def binomial(n: int, r: int) -> int:
    """Exact C(n, r), with C(n, r) = 0 whenever r < 0 or r > n."""
    if n < 0:
        raise InvalidArgument(f"binomial needs n >= 0, got n={n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


@dataclass(frozen=True)
class BinomialTable:
    """Pascal triangle up to ``max_n``, built once by the additive rule.

    Kept separate from :func:`binomial` (which defers to :func:`math.comb`) so the
    two can be checked against each other.
    """

    max_n: int
    rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.max_n < 0:
            raise InvalidArgument(f"max_n must be >= 0, got {self.max_n}")
        rows = [(1,)]
        for n in range(1, self.max_n + 1):
            prev = rows[-1]
            rows.append((1,) + tuple(prev[r - 1] + prev[r] for r in range(1, n)) + (1,))
        object.__setattr__(self, "rows", tuple(rows))

    def __call__(self, n: int, r: int) -> int:
        if n < 0 or n > self.max_n:
            raise InvalidArgument(f"n={n} outside table range 0..{self.max_n}")
        if r < 0 or r > n:
            return 0
        return self.rows[n][r]


def max_split_product(N: int, k: int) -> tuple[int, list[tuple[int, int]]]:
    """Maximum of C(A, a)·C(N−A, k−a) over 1 ≤ A ≤ N−1, 0 ≤ a ≤ k, with all maximizers.

    No restriction on k; :func:`lemma10_max` adds the k < N/2 domain check.
    """
    if N < 2:
        raise InvalidArgument(f"need N >= 2, got {N}")
    if not 0 <= k <= N:
        raise InvalidArgument(f"need 0 <= k <= N, got k={k}")
    best = -1
    argmax: list[tuple[int, int]] = []
    for A in range(1, N):
        for a in range(k + 1):
            value = binomial(A, a) * binomial(N - A, k - a)
            if value > best:
                best, argmax = value, [(A, a)]
            elif value == best:
                argmax.append((A, a))
    return best, argmax


def lemma10_max(N: int, k: int) -> tuple[int, list[tuple[int, int]]]:
    """Exhaustive maximum of C(A, a)·C(N−A, k−a) for k < N/2.

    The maximum equals C(N−1, k) and is attained at (A, a) = (1, 0), which the
    returned maximizer list allows callers to confirm.
    """
    if N < 2:
        raise InvalidArgument(f"need N >= 2, got {N}")
    if not 1 <= k or 2 * k >= N:
        raise OutOfDomain(f"requires 1 <= k < N/2, got N={N}, k={k}")
    return max_split_product(N, k)


def vandermonde_sum(x1: int, x2: int, delta: int) -> int:
    """Σ_a C(x1, a)·C(x2, x2+delta−a) by explicit summation."""
    if x1 < 0 or x2 < 0 or delta < 0:
        raise InvalidArgument("x1, x2 and delta must be nonnegative")
    return sum(binomial(x1, a) * binomial(x2, x2 + delta - a) for a in range(x1 + 1))


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Square root of a nonnegative rational if it is itself rational, else None."""
    if q < 0:
        raise InvalidArgument(f"negative argument {q}")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
