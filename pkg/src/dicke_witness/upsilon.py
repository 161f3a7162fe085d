"""Biseparable-overlap optimization for W-state witnesses ω0Π0 + ω1Π1 + ω2Π2 − |W><W|.

For a bipartition into K and L = N − K qubits the relevant product states are
(a0|0..0> + b Σ|e_i>) ⊗ (c0|0..0> + d Σ|e_j>) with a0² + K b² = c0² + L d² = 1,
all amplitudes real and nonnegative. Υ is the largest value of

    (K b c0 + L d a0)² / N − ω0 a0²c0² − ω1 (a0² + c0² − 2a0²c0²) − ω2 (1 − a0²)(1 − c0²)

and the operator is a witness iff Υ ≤ 0. The three ω weights sum to one, so a
uniform shift ω_i → ω_i + ε lowers Υ by exactly ε.

Search: for fixed a0 the objective is a quadratic form in (cos φ, sin φ) with
c0 = cos φ, whose off-diagonal entry is nonnegative, so the maximum over c0 is
the top eigenvalue of a 2×2 matrix with a first-quadrant eigenvector. What
remains is a one-dimensional search over a0 per K: dense grid, then bounded
Brent polishing around the best grid cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .combinatorics import binomial
from .dicke import DickeSpec
from .errors import InfeasibleShift, InvalidArgument
from .witnesses import DiagonalWitness, cor8_witness

__all__ = [
    "UpsilonResult",
    "upsilon_objective",
    "upsilon",
    "shift_to_witness",
    "prop9_witness",
    "optimized_start",
]

GRID_POINTS = 1001
REFINE_TOL = 1e-10
SHIFT_TOL = 1e-9
# |Υ| below this (relative to max ω) is floating-point noise around an exact zero
ROUNDOFF_FLOOR = 1e-14
_CANDIDATES = 4


@dataclass(frozen=True)
class UpsilonResult:
    N: int
    omegas: tuple[float, float, float]
    value: float
    K: int
    a0: float
    c0: float
    grid_step: float
    refine_tol: float

    @property
    def L(self) -> int:
        return self.N - self.K

    @property
    def b(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.a0**2) / self.K)

    @property
    def d(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.c0**2) / self.L)


def _check_omegas(N: int, omegas: Sequence[float]) -> tuple[float, float, float]:
    if N < 3:
        raise InvalidArgument(f"W-state optimization needs N >= 3, got {N}")
    if len(omegas) != 3:
        raise InvalidArgument("expected exactly three coefficients (ω0, ω1, ω2)")
    return float(omegas[0]), float(omegas[1]), float(omegas[2])


def upsilon_objective(N, omegas, K, a0, c0):
    """Direct evaluation of the objective; broadcasts over array-valued a0, c0."""
    w0, w1, w2 = omegas
    L = N - K
    a0 = np.asarray(a0, dtype=float)
    c0 = np.asarray(c0, dtype=float)
    b = np.sqrt(np.clip(1.0 - a0**2, 0.0, None) / K)
    d = np.sqrt(np.clip(1.0 - c0**2, 0.0, None) / L)
    a2, c2 = a0**2, c0**2
    value = (
        (K * b * c0 + L * d * a0) ** 2 / N
        - w0 * a2 * c2
        - w1 * (a2 + c2 - 2 * a2 * c2)
        - w2 * (1 - a2 - c2 + a2 * c2)
    )
    return value if value.ndim else float(value)


def _profile(N: int, w: tuple[float, float, float], K: int, a0):
    """Max over c0 of the objective at fixed a0, together with the maximizing c0."""
    w0, w1, w2 = w
    L = N - K
    a0 = np.asarray(a0, dtype=float)
    a2 = a0**2
    s2 = np.clip(1.0 - a2, 0.0, None)
    m11 = K * s2 / N - w0 * a2 - w1 * s2
    m22 = L * a2 / N - w1 * a2 - w2 * s2
    m12 = np.sqrt(K * L * s2) * a0 / N
    half_gap = 0.5 * (m11 - m22)
    top = 0.5 * (m11 + m22) + np.hypot(half_gap, m12)
    # eigenvector (cos φ, sin φ) of the top eigenvalue, built from the better-conditioned row
    vx = np.where(m11 >= m22, top - m22, m12)
    vy = np.where(m11 >= m22, m12, top - m11)
    norm = np.hypot(vx, vy)
    c0 = np.where(norm > 0, vx / np.where(norm > 0, norm, 1.0), 0.0)
    return top, np.clip(c0, 0.0, 1.0)


def _best_for_K(N, w, K, grid, refine_tol):
    values, _ = _profile(N, w, K, grid)
    order = np.argsort(-values, kind="stable")[:_CANDIDATES]
    best_val, best_a = -np.inf, 0.0
    step = grid[1] - grid[0]
    for i in sorted(order):
        a_lo = max(0.0, grid[i] - step)
        a_hi = min(1.0, grid[i] + step)
        # polish in the angle θ = arccos(a0), where the objective is smooth up to a0 = 1
        res = minimize_scalar(
            lambda t: -float(_profile(N, w, K, math.cos(t))[0]),
            bounds=(math.acos(a_hi), math.acos(a_lo)),
            method="bounded",
            options={"xatol": refine_tol},
        )
        candidates = [(float(values[i]), float(grid[i])), (-float(res.fun), math.cos(res.x))]
        for val, a in candidates:
            if val > best_val:
                best_val, best_a = val, a
    return best_val, best_a


def upsilon(
    N: int,
    omegas: Sequence[float],
    grid_points: int = GRID_POINTS,
    refine_tol: float = REFINE_TOL,
    full_range: bool = False,
) -> UpsilonResult:
    """Maximize the objective over K, a0 and c0.

    K runs over 1..⌊N/2⌋ (swapping the two parties maps K to N − K) unless
    ``full_range`` is set. Ties resolve to the smallest K, then smallest a0.
    """
    w = _check_omegas(N, omegas)
    grid = np.linspace(0.0, 1.0, grid_points)
    ks = range(1, N) if full_range else range(1, N // 2 + 1)
    best = None
    for K in ks:
        val, a0 = _best_for_K(N, w, K, grid, refine_tol)
        if best is None or val > best[0]:
            best = (val, K, a0)
    val, K, a0 = best
    _, c0 = _profile(N, w, K, a0)
    c0 = float(c0)
    value = float(upsilon_objective(N, w, K, a0, c0))
    return UpsilonResult(N, w, value, K, a0, c0, float(grid[1] - grid[0]), refine_tol)


def shift_to_witness(N: int, omegas: Sequence[float], **kwargs) -> DiagonalWitness:
    """Shift all three coefficients by Υ so the result has Υ = 0."""
    w = np.array(_check_omegas(N, omegas))
    shift = upsilon(N, w, **kwargs).value
    if abs(shift) <= ROUNDOFF_FLOOR * max(1.0, float(w.max())):
        shift = 0.0
    shifted = w + shift
    if shifted.min() < 0:
        raise InfeasibleShift(f"shift by {shift:.6g} makes a coefficient negative: {shifted}")
    check = upsilon(N, shifted, **kwargs).value
    if abs(check) > SHIFT_TOL:
        raise RuntimeError(f"shifted coefficients still have upsilon={check:.3g}")
    return DiagonalWitness.from_floats(
        DickeSpec(N, 1), "prop9", list(shifted) + [0.0] * (N - 2)
    )


def _noise_threshold(N: int, w: Sequence[float]) -> float:
    trace = w[0] + N * w[1] + binomial(N, 2) * w[2] - 1.0
    margin = 1.0 - w[1]
    return margin / (margin + trace / 2**N)


def optimized_start(N: int, grid_points: int = 201) -> tuple[float, float, float]:
    """Starting coefficients whose shifted witness has the best white-noise threshold.

    Only differences between the ω_i matter after the shift, so the search runs
    over (ω0 − ω1, ω2 − ω1) with Nelder-Mead, started from the closed-form
    PPT witness.
    """
    ref = cor8_witness(N).omegas[:3]
    w1 = ref[1]

    def score(p):
        w = np.array([w1 + p[0], w1, w1 + p[1]])
        w = w + upsilon(N, w, grid_points=grid_points).value
        if w.min() < 0 or w[1] >= 1:
            return 1.0
        return -_noise_threshold(N, w)

    res = minimize(
        score,
        x0=[ref[0] - w1, ref[2] - w1],
        method="Nelder-Mead",
        options={"xatol": 1e-8, "fatol": 1e-12, "maxiter": 600},
    )
    return (w1 + float(res.x[0]), w1, w1 + float(res.x[1]))


def prop9_witness(N: int, start: str = "cor8") -> DiagonalWitness:
    """Overlap-certified W-state witness obtained by the uniform shift.

    ``start="cor8"`` shifts the closed-form PPT witness. That witness already
    has Υ = 0 (the state |0>⊗|W_{N−1}> saturates ω1), so the result equals it
    up to optimizer precision. ``start="optimized"`` first searches the
    coefficient shape for the best noise threshold; the result is a valid
    witness but in general not a fully PPT one.
    """
    if start == "cor8":
        return shift_to_witness(N, cor8_witness(N).omegas[:3])
    if start == "optimized":
        candidate = shift_to_witness(N, optimized_start(N))
        baseline = shift_to_witness(N, cor8_witness(N).omegas[:3])
        if _noise_threshold(N, candidate.omegas) >= _noise_threshold(N, baseline.omegas):
            return candidate
        return baseline
    raise InvalidArgument(f"unknown start {start!r}; use 'cor8' or 'optimized'")
