"""Dicke states, excitation-sector projectors and their Schmidt decompositions.

Basis convention: bit ``b`` of a computational-basis index is the state of
qubit ``b``. Dense vectors are capped at :data:`MAX_DENSE_QUBITS` qubits; the
closed-form quantities are available at any N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import binomial
from .errors import CapacityError, InvalidArgument, OutOfDomain

__all__ = [
    "MAX_DENSE_QUBITS",
    "DickeSpec",
    "SchmidtDecomposition",
    "hamming_weights",
    "dicke_vector",
    "sector_projector_diagonal",
    "schmidt_coefficients",
    "max_schmidt_sq",
]

MAX_DENSE_QUBITS = 16


@dataclass(frozen=True)
class DickeSpec:
    """The pair (n, k) naming the state |D^n_k>."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidArgument(f"need n >= 2 qubits, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise InvalidArgument(f"need 0 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def entangled(self) -> bool:
        return 1 <= self.k <= self.n - 1

    def flipped(self) -> DickeSpec:
        """The state label obtained by exchanging |0> and |1> on every qubit."""
        return DickeSpec(self.n, self.n - self.k)


def hamming_weights(n: int) -> np.ndarray:
    """Excitation number of every basis index of an n-qubit register."""
    idx = np.arange(1 << n, dtype=np.int64)
    weights = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        weights += (idx >> b) & 1
    return weights


def _check_dense(n: int, limit: int = MAX_DENSE_QUBITS) -> None:
    if n > limit:
        raise CapacityError(f"dense 2^n objects limited to n <= {limit}, got n={n}")


def dicke_vector(spec: DickeSpec) -> np.ndarray:
    """Real amplitude vector of |D^n_k>, uniform 1/sqrt(C(n,k)) on weight-k indices."""
    _check_dense(spec.n)
    amp = 1.0 / math.sqrt(binomial(spec.n, spec.k))
    return np.where(hamming_weights(spec.n) == spec.k, amp, 0.0)


def sector_projector_diagonal(n: int, i: int) -> np.ndarray:
    """Diagonal of Π_i, the projector onto basis states with exactly i excitations."""
    if not 0 <= i <= n:
        raise InvalidArgument(f"sector index must satisfy 0 <= i <= n, got i={i}, n={n}")
    _check_dense(n)
    return (hamming_weights(n) == i).astype(float)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt data of |D^N_k> across the cut (first A qubits | last N−A).

    ``squares[a]`` is the exact squared coefficient attached to the product of
    Dicke states |D^A_a> ⊗ |D^{N−A}_{k−a}>.
    """

    spec: DickeSpec
    part_size: int
    squares: tuple[Fraction, ...]

    @property
    def coefficients(self) -> np.ndarray:
        return np.sqrt(np.array([float(s) for s in self.squares]))


def schmidt_coefficients(spec: DickeSpec, part_size: int) -> SchmidtDecomposition:
    N, k, A = spec.n, spec.k, part_size
    if not 1 <= A <= N - 1:
        raise InvalidArgument(f"part size must satisfy 1 <= A <= N-1, got A={A}, N={N}")
    total = binomial(N, k)
    squares = tuple(Fraction(binomial(A, a) * binomial(N - A, k - a), total) for a in range(k + 1))
    return SchmidtDecomposition(spec, A, squares)


def max_schmidt_sq(spec: DickeSpec) -> Fraction:
    """Largest squared Schmidt coefficient over every bipartition, by exhaustive search.

    This is the maximal squared overlap of |D^N_k> with biseparable pure states.
    """
    if not spec.entangled:
        raise OutOfDomain(f"|D^{spec.n}_{spec.k}> is a product state")
    return max(
        max(schmidt_coefficients(spec, A).squares) for A in range(1, spec.n)
    )
