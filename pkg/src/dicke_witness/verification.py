"""Dense spectral certification of witness operators.

Matrices are plain real symmetric ``numpy`` arrays of shape (2^N, 2^N) in the
basis convention of :mod:`dicke_witness.dicke`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .dicke import DickeSpec, dicke_vector, hamming_weights
from .errors import CapacityError, InvalidArgument
from .witnesses import DiagonalWitness, lambda_sq

__all__ = [
    "MAX_MATRIX_QUBITS",
    "PptRow",
    "PptReport",
    "worker_count",
    "assemble_witness_matrix",
    "partial_transpose",
    "min_eigenvalue",
    "jacobi_eigenvalues",
    "gershgorin_lower_bound",
    "fully_ppt_check",
    "cross_sector_block",
    "block_singular_values",
    "biseparable_sampling_check",
]

MAX_MATRIX_QUBITS = 12
MAX_SVD_QUBITS = 10
DEFAULT_TOL = 1e-9
_SYMMETRY_TOL = 1e-12

Subset = Union[int, Iterable[int]]


def worker_count() -> int:
    """Worker cap from ``WITNESS_THREADS``, defaulting to the CPU count."""
    raw = os.environ.get("WITNESS_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise InvalidArgument(f"WITNESS_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise InvalidArgument(f"WITNESS_THREADS must be a positive integer, got {raw!r}")
    return value


def _qubits(M: np.ndarray) -> int:
    dim = M.shape[0]
    if M.ndim != 2 or M.shape[1] != dim or dim < 2 or dim & (dim - 1):
        raise InvalidArgument(f"expected a square 2^n matrix, got shape {M.shape}")
    return dim.bit_length() - 1


def _mask(subset: Subset) -> int:
    if isinstance(subset, (int, np.integer)):
        return int(subset)
    mask = 0
    for q in subset:
        mask |= 1 << int(q)
    return mask


def _check_symmetric(M: np.ndarray) -> None:
    gap = np.abs(M - M.T)
    if np.any(gap > _SYMMETRY_TOL * np.maximum(1.0, np.abs(M))):
        raise InvalidArgument("matrix is not symmetric within tolerance")


def assemble_witness_matrix(W: DiagonalWitness) -> np.ndarray:
    """Σ_i ω_i Π_i − |D><D| as a dense matrix."""
    n = W.spec.n
    if n > MAX_MATRIX_QUBITS:
        raise CapacityError(f"witness matrices limited to N <= {MAX_MATRIX_QUBITS}, got {n}")
    diag = np.asarray(W.omegas)[hamming_weights(n)]
    v = dicke_vector(W.spec)
    M = -np.outer(v, v)
    M[np.diag_indices_from(M)] += diag
    return M


def partial_transpose(M: np.ndarray, subset: Subset) -> np.ndarray:
    """Transpose the tensor factors of the qubits in ``subset`` (bitmask or iterable).

    The full register is accepted as a plain transpose.
    """
    n = _qubits(M)
    mask = _mask(subset)
    full = (1 << n) - 1
    if mask == 0 or mask & ~full:
        raise InvalidArgument(f"subset mask {mask:#b} must be a nonempty subset of {n} qubits")
    if mask == full:
        return M.T.copy()
    # C-order reshape: row axis n-1-b and column axis 2n-1-b belong to qubit b
    axes = list(range(2 * n))
    for b in range(n):
        if mask >> b & 1:
            r, c = n - 1 - b, 2 * n - 1 - b
            axes[r], axes[c] = axes[c], axes[r]
    return np.ascontiguousarray(M.reshape((2,) * (2 * n)).transpose(axes)).reshape(M.shape)


def min_eigenvalue(M: np.ndarray) -> float:
    if M.shape[0] > 1 << MAX_MATRIX_QUBITS:
        raise CapacityError(f"dimension {M.shape[0]} exceeds {1 << MAX_MATRIX_QUBITS}")
    _check_symmetric(M)
    return float(np.linalg.eigvalsh(M)[0])


def jacobi_eigenvalues(M: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations (ascending).

    Slow but independent of LAPACK; meant as a cross-check for small matrices.
    """
    A = np.array(M, dtype=float)
    n = A.shape[0]
    _check_symmetric(A)
    scale = max(np.abs(A).max(), 1e-300)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(A**2) - np.sum(np.diag(A) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * rp - s * rq, s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * cp - s * cq, s * cp + c * cq
    return np.sort(np.diag(A))


def gershgorin_lower_bound(M: np.ndarray) -> float:
    """min_i (M_ii − Σ_{j≠i} |M_ij|), a lower bound on every eigenvalue."""
    diag = np.diag(M)
    radii = np.abs(M).sum(axis=1) - np.abs(diag)
    return float(np.min(diag - radii))


@dataclass(frozen=True)
class PptRow:
    m: int
    min_eigenvalue: float
    gershgorin_bound: float
    random_subset: tuple[int, ...]
    random_min_eigenvalue: float
    passed: bool


@dataclass(frozen=True)
class PptReport:
    spec: DickeSpec
    family: str
    rows: tuple[PptRow, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def min_eigenvalue(self) -> float:
        return min(row.min_eigenvalue for row in self.rows)


def fully_ppt_check(W: DiagonalWitness, tol: float = DEFAULT_TOL, seed: int = 0) -> PptReport:
    """Check every partial transpose of W is positive semidefinite.

    The operator is permutation invariant, so one subset per size m = 1..⌊N/2⌋
    suffices: the leading m qubits, spot-checked against a random m-subset.
    """
    n = W.spec.n
    M = assemble_witness_matrix(W)
    rng = np.random.default_rng(seed)
    subsets = [tuple(sorted(int(q) for q in rng.permutation(n)[:m])) for m in range(1, n // 2 + 1)]

    def row(m: int) -> PptRow:
        pt = partial_transpose(M, (1 << m) - 1)
        lo = min_eigenvalue(pt)
        bound = gershgorin_lower_bound(pt)
        spot = min_eigenvalue(partial_transpose(M, subsets[m - 1]))
        ok = lo >= -tol and spot >= -tol and abs(lo - spot) <= tol
        return PptRow(m, lo, bound, subsets[m - 1], spot, ok)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        rows = tuple(pool.map(row, range(1, n // 2 + 1)))
    return PptReport(W.spec, W.family, rows, tol)


def _sector_indices(n: int, weight: int) -> np.ndarray:
    # ascending index order; for fixed weight this is the lexicographic order used throughout
    return np.flatnonzero(hamming_weights(n) == weight)


def cross_sector_block(spec: DickeSpec, delta: int, x: int) -> np.ndarray:
    """Block of PT(|D><D|) over the first x qubits, rows of weight k−δ, columns k+δ."""
    n, k = spec.n, spec.k
    if n > MAX_SVD_QUBITS:
        raise CapacityError(f"block extraction limited to N <= {MAX_SVD_QUBITS}, got {n}")
    if not 1 <= delta <= k or not 1 <= x <= n // 2:
        raise InvalidArgument(f"need 1 <= delta <= k and 1 <= x <= N/2, got delta={delta}, x={x}")
    v = dicke_vector(spec)
    pt = partial_transpose(np.outer(v, v), (1 << x) - 1)
    return pt[np.ix_(_sector_indices(n, k - delta), _sector_indices(n, k + delta))]


def block_singular_values(
    spec: DickeSpec, delta: int, x: int, cutoff: float = 1e-12
) -> tuple[list[float], list[float]]:
    """Numerical nonzero singular values of the cross-sector block and the closed-form set.

    Both lists are sorted in descending order.
    """
    block = cross_sector_block(spec, delta, x)
    sv = np.linalg.svd(block, compute_uv=False)
    computed = sorted((float(s) for s in sv if s > cutoff), reverse=True)
    predicted = []
    for x1 in range(x + 1):
        lam2 = lambda_sq(spec, delta, x1, x - x1)
        if lam2 > 0:
            predicted.append(math.sqrt(float(lam2)))
    return computed, sorted(predicted, reverse=True)


def _local_to_global(part: np.ndarray, n_local: int) -> np.ndarray:
    idx = np.arange(1 << n_local)
    out = np.zeros_like(idx)
    for j, q in enumerate(part):
        out |= ((idx >> j) & 1) << int(q)
    return out


def _random_states(rng: np.random.Generator, count: int, n: int, kind: str) -> np.ndarray:
    dim = 1 << n
    if kind == "full":
        psi = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    else:
        psi = np.zeros((count, dim), dtype=complex)
        singles = 1 << np.arange(n)
        if kind == "sector":
            psi[:, 0] = rng.standard_normal(count) + 1j * rng.standard_normal(count)
            psi[:, singles] = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
        else:  # uniform single-excitation amplitudes, real and nonnegative
            t = rng.uniform(0.0, 0.5 * np.pi, count)
            psi[:, 0] = np.cos(t)
            psi[:, singles] = (np.sin(t) / math.sqrt(n))[:, None]
    return psi / np.linalg.norm(psi, axis=1, keepdims=True)


def biseparable_sampling_check(
    W: DiagonalWitness, samples: int = 100_000, seed: int = 0, batch: int = 500
) -> float:
    """Smallest <a⊗b|W|a⊗b> over random pure product states on random bipartitions.

    Samples rotate between Haar-like states on the whole party, states restricted
    to at most one excitation per party, and the symmetric one-excitation family.
    """
    n = W.spec.n
    if n > MAX_MATRIX_QUBITS:
        raise CapacityError(f"sampling limited to N <= {MAX_MATRIX_QUBITS}, got {n}")
    rng = np.random.default_rng(seed)
    diag = np.asarray(W.omegas)[hamming_weights(n)]
    dicke = dicke_vector(W.spec)
    kinds = ("full", "sector", "symmetric")
    worst = math.inf
    done = 0
    step = 0
    while done < samples:
        count = min(batch, samples - done)
        kind = kinds[step % len(kinds)]
        K = int(rng.integers(1, n))
        order = rng.permutation(n)
        part_a, part_b = np.sort(order[:K]), np.sort(order[K:])
        a = _random_states(rng, count, K, kind)
        b = _random_states(rng, count, n - K, kind)
        index = (
            _local_to_global(part_a, K)[:, None] | _local_to_global(part_b, n - K)[None, :]
        ).ravel()
        psi = np.zeros((count, 1 << n), dtype=complex)
        psi[:, index] = (a[:, :, None] * b[:, None, :]).reshape(count, -1)
        prob = np.abs(psi) ** 2
        values = prob @ diag - np.abs(psi @ dicke) ** 2
        worst = min(worst, float(values.min()))
        done += count
        step += 1
    return worst
