"""Closed-form witnesses of the form Σ_i ω_i Π_i − |D^N_k><D^N_k|.

Every constructor returns a :class:`DiagonalWitness` whose coefficient vector
spans all excitation levels 0..N; a zero coefficient means the sector projector
is absent. Where ω_i is irrational its exact square is still carried, so the
singular-value certificates can be checked in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .combinatorics import binomial, exact_sqrt
from .dicke import DickeSpec, max_schmidt_sq
from .errors import InvalidArgument, OutOfDomain

__all__ = [
    "FAMILIES",
    "DiagonalWitness",
    "LambdaMax",
    "mu",
    "projective",
    "refined_projective",
    "prop5_witness",
    "lambda_sq",
    "lambda_max",
    "thm6_witness",
    "cor8_witness",
    "build_witness",
]

FAMILIES = ("projective", "refined", "prop5", "thm6", "cor8", "prop9")


@dataclass(frozen=True)
class DiagonalWitness:
    """Coefficients ω_0..ω_N of a sector-diagonal witness for |D^N_k>.

    Attributes
    ----------
    spec : DickeSpec
        Target state.
    family : str
        One of :data:`FAMILIES`.
    omegas : tuple of float
        ω_i for i = 0..N.
    exact : tuple
        ω_i as a Fraction where it is rational, else None.
    exact_squares : tuple
        ω_i² as a Fraction where known, else None.
    """

    spec: DickeSpec
    family: str
    omegas: tuple[float, ...]
    exact: tuple[Optional[Fraction], ...]
    exact_squares: tuple[Optional[Fraction], ...]

    def __post_init__(self) -> None:
        n = self.spec.n + 1
        if not (len(self.omegas) == len(self.exact) == len(self.exact_squares) == n):
            raise InvalidArgument(f"coefficient vectors must have length N+1 = {n}")
        if any(w < 0 for w in self.omegas):
            raise InvalidArgument("witness coefficients must be nonnegative")

    @classmethod
    def from_floats(cls, spec: DickeSpec, family: str, omegas: Sequence[float]) -> DiagonalWitness:
        omegas = tuple(float(w) for w in omegas)
        none = (None,) * len(omegas)
        return cls(spec, family, omegas, none, none)

    @classmethod
    def from_squares(
        cls, spec: DickeSpec, family: str, squares: Sequence[Fraction]
    ) -> DiagonalWitness:
        exact = tuple(exact_sqrt(q) for q in squares)
        omegas = tuple(
            float(e) if e is not None else math.sqrt(float(q)) for e, q in zip(exact, squares)
        )
        return cls(spec, family, omegas, exact, tuple(squares))

    @property
    def is_exact(self) -> bool:
        return all(e is not None for e in self.exact)

    @property
    def support(self) -> tuple[int, ...]:
        """Excitation levels whose projector carries a nonzero coefficient."""
        return tuple(i for i, w in enumerate(self.omegas) if w != 0.0)

    def flipped(self) -> DiagonalWitness:
        """The witness for |D^N_{N−k}>, obtained by relabelling |0> and |1>."""
        return DiagonalWitness(
            self.spec.flipped(),
            self.family,
            self.omegas[::-1],
            self.exact[::-1],
            self.exact_squares[::-1],
        )


@dataclass(frozen=True)
class LambdaMax:
    spec: DickeSpec
    delta: int
    lambda_sq: Fraction
    argmax: tuple[tuple[int, int], ...]

    @property
    def value(self) -> float:
        return math.sqrt(float(self.lambda_sq))


def _require_lower_half(spec: DickeSpec) -> None:
    if not 1 <= spec.k or 2 * spec.k > spec.n:
        raise OutOfDomain(f"requires 1 <= k <= N/2, got N={spec.n}, k={spec.k}")


def _require_entangled(spec: DickeSpec) -> None:
    if not spec.entangled:
        raise OutOfDomain(f"|D^{spec.n}_{spec.k}> is a product state; no witness exists")


def mu(N: int, k: int) -> Fraction:
    """ω_k of the refined witnesses: (N−k)/N below half filling, N/(2(N−1)) at k = N/2.

    N = 2, k = 1 is both half filled and a W state; the W-state value 1/2 is the
    correct overlap there (N/(2(N−1)) would give 1).
    """
    _require_lower_half(DickeSpec(N, k))
    if 2 * k == N and k > 1:
        return Fraction(N, 2 * (N - 1))
    return Fraction(N - k, N)


def _lower_half(spec: DickeSpec, build) -> DiagonalWitness:
    """Build for k ≤ N/2 directly, otherwise through the bit-flip map."""
    _require_entangled(spec)
    if 2 * spec.k > spec.n:
        return build(spec.flipped()).flipped()
    return build(spec)


def projective(spec: DickeSpec) -> DiagonalWitness:
    """α·1 − |D><D| with α the maximal squared biseparable overlap."""
    _require_entangled(spec)
    alpha = max_schmidt_sq(spec)
    return DiagonalWitness.from_squares(spec, "projective", [alpha * alpha] * (spec.n + 1))


def refined_projective(spec: DickeSpec) -> DiagonalWitness:
    """The projective witness with the identity cut down to at most 2k excitations."""

    def build(s: DickeSpec) -> DiagonalWitness:
        m = mu(s.n, s.k)
        squares = [m * m if i <= 2 * s.k else Fraction(0) for i in range(s.n + 1)]
        return DiagonalWitness.from_squares(s, "refined", squares)

    return _lower_half(spec, build)


def prop5_witness(N: int) -> DiagonalWitness:
    """Half-filled witness with ω_i = min{C(N,i)/C(N,N/2), N/(2(N−1))}.

    The first entry comes from a Gershgorin estimate of the partially transposed
    blocks, the second from the projective witness.
    """
    if N < 4 or N % 2:
        raise InvalidArgument(f"prop5 needs even N >= 4, got N={N}")
    central = binomial(N, N // 2)
    cap = Fraction(N, 2 * (N - 1))
    omegas = [min(Fraction(binomial(N, i), central), cap) for i in range(N + 1)]
    return DiagonalWitness.from_squares(DickeSpec(N, N // 2), "prop5", [w * w for w in omegas])


def lambda_sq(spec: DickeSpec, delta: int, x1: int, x2: int) -> Fraction:
    """Squared singular value λ²(x1, x2) of the cross-sector block for offset δ.

    x1 (x2) counts the transposed qubits on which the row basis state reads 0 (1).
    """
    N, k = spec.n, spec.k
    if not 1 <= delta <= k or 2 * k > N:
        raise OutOfDomain(f"requires 1 <= delta <= k <= N/2, got N={N}, k={k}, delta={delta}")
    if x1 < 0 or x2 < 0:
        raise InvalidArgument("x1 and x2 must be nonnegative")
    rest, x = N - x1 - x2, x1 + x2
    if rest < 0:
        return Fraction(0)
    num = (
        binomial(rest, k - x2)
        * binomial(x, x2)
        * binomial(rest, k - delta - x2)
        * binomial(x, x2 + delta)
    )
    return Fraction(num, binomial(N, k) ** 2)


def lambda_max(spec: DickeSpec, delta: int) -> LambdaMax:
    """Exhaustive maximum of λ² over x1 ≥ δ, 0 ≤ x2 ≤ k−δ, x1 + x2 ≤ ⌊N/2⌋."""
    N, k = spec.n, spec.k
    best = Fraction(-1)
    argmax: list[tuple[int, int]] = []
    for x2 in range(k - delta + 1):
        for x1 in range(delta, N // 2 - x2 + 1):
            value = lambda_sq(spec, delta, x1, x2)
            if value > best:
                best, argmax = value, [(x1, x2)]
            elif value == best:
                argmax.append((x1, x2))
    if best <= 0:
        raise RuntimeError(f"empty or degenerate lambda domain for {spec}, delta={delta}")
    return LambdaMax(spec, delta, best, tuple(sorted(argmax)))


def thm6_witness(spec: DickeSpec) -> DiagonalWitness:
    """Trace-minimal fully PPT witness supported on at most 2k excitations.

    ω_k = μ(N, k); each pair (ω_{k−δ}, ω_{k+δ}) saturates ω_{k−δ}ω_{k+δ} = λ_max(δ)²
    with the split that minimizes C(N,k−δ)ω_{k−δ} + C(N,k+δ)ω_{k+δ}.
    """

    def build(s: DickeSpec) -> DiagonalWitness:
        N, k = s.n, s.k
        squares = [Fraction(0)] * (N + 1)
        m = mu(N, k)
        squares[k] = m * m
        for delta in range(1, k + 1):
            lam2 = lambda_max(s, delta).lambda_sq
            lo, hi = binomial(N, k - delta), binomial(N, k + delta)
            squares[k - delta] = Fraction(hi, lo) * lam2
            squares[k + delta] = Fraction(lo, hi) * lam2
        return DiagonalWitness.from_squares(s, "thm6", squares)

    return _lower_half(spec, build)


def cor8_witness(N: int) -> DiagonalWitness:
    """Closed-form W-state witness (k = 1), ω = (ω0, (N−1)/N, ω2)."""
    if N < 3:
        raise InvalidArgument(f"cor8 needs N >= 3, got N={N}")
    if N % 2 == 0:
        w0_sq = Fraction(N * (N - 1), 8)
        w2_sq = Fraction(1, 2 * N * (N - 1))
    else:
        w0_sq = Fraction((N - 1) ** 2 * (N + 1), 8 * N)
        w2_sq = Fraction(N + 1, 2 * N**3)
    squares = [w0_sq, Fraction(N - 1, N) ** 2, w2_sq] + [Fraction(0)] * (N - 2)
    return DiagonalWitness.from_squares(DickeSpec(N, 1), "cor8", squares)


def build_witness(family: str, N: int, k: Optional[int] = None, **options) -> DiagonalWitness:
    """Dispatch on a family tag; ``k`` defaults to the family's natural value."""
    if family == "prop5":
        if k is not None and 2 * k != N:
            raise InvalidArgument("prop5 is defined for k = N/2 only")
        return prop5_witness(N)
    if family in ("cor8", "prop9"):
        if k is not None and k != 1:
            raise InvalidArgument(f"{family} is defined for k = 1 only")
        if family == "cor8":
            return cor8_witness(N)
        from .upsilon import prop9_witness

        return prop9_witness(N, **options)
    if k is None:
        raise InvalidArgument(f"family {family!r} needs k")
    spec = DickeSpec(N, k)
    if family == "projective":
        return projective(spec)
    if family == "refined":
        return refined_projective(spec)
    if family == "thm6":
        return thm6_witness(spec)
    raise InvalidArgument(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
