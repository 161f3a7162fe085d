"""White-noise thresholds and comparison tables.

For ρ(p) = p·1/2^N + (1−p)|D><D| and a witness with ω_k on the Dicke sector,
Tr(Wρ) = p·Tr(W)/2^N + (1−p)(ω_k − 1). The threshold p_crit is its root:
states with p < p_crit are detected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .combinatorics import binomial
from .dicke import DickeSpec
from .errors import InvalidArgument, NoDetection, OutOfDomain
from .upsilon import prop9_witness
from .witnesses import (
    DiagonalWitness,
    cor8_witness,
    mu,
    prop5_witness,
    projective,
    refined_projective,
    thm6_witness,
)

__all__ = [
    "RobustnessRecord",
    "FIGURES",
    "FIGURE_RANGES",
    "p_crit_generic",
    "p_crit_refined_closed_form",
    "p_crit_cor8_closed_form",
    "p_crit_huber",
    "figure_data",
]

FIGURES = ("fig2", "fig3a", "fig3b", "fig4")
FIGURE_RANGES = {"fig2": (4, 14), "fig3a": (4, 16), "fig3b": (4, 16), "fig4": (3, 10)}
_MAX_FIGURE_N = 24


@dataclass(frozen=True)
class RobustnessRecord:
    N: int
    k: int
    family: str
    p_crit: float
    exact: Optional[Fraction] = None


def p_crit_generic(W: DiagonalWitness) -> RobustnessRecord:
    """Threshold from the witness trace; exact when every ω_i is rational."""
    N, k = W.spec.n, W.spec.k
    if W.is_exact:
        trace = sum(w * binomial(N, i) for i, w in enumerate(W.exact)) - 1
        margin = 1 - W.exact[k]
        if margin <= 0:
            raise NoDetection(f"ω_k = {W.exact[k]} >= 1; the noisy family is never detected")
        p = margin / (margin + Fraction(trace, 2**N))
        return RobustnessRecord(N, k, W.family, float(p), p)
    trace = math.fsum(w * binomial(N, i) for i, w in enumerate(W.omegas)) - 1.0
    margin = 1.0 - W.omegas[k]
    if margin <= 0:
        raise NoDetection(f"ω_k = {W.omegas[k]} >= 1; the noisy family is never detected")
    return RobustnessRecord(N, k, W.family, margin / (margin + trace / 2**N))


def p_crit_refined_closed_form(N: int, k: int) -> Fraction:
    """Threshold of the refined projective witness as a closed sum over sectors ≤ 2k.

    With m = μ(N, k) this is 1 / (1 + 2^−N [m/(1−m)·Σ_{i≤2k} C(N,i) − 1/(1−m)]);
    below half filling m = (N−k)/N and the bracket reads (N−k)/k·Σ − N/k.
    """
    m = mu(N, k)
    total = sum(binomial(N, i) for i in range(2 * k + 1))
    bracket = m / (1 - m) * total - 1 / (1 - m)
    return 1 / (1 + bracket / 2**N)


def p_crit_cor8_closed_form(N: int) -> float:
    w0 = cor8_witness(N).omegas[0]
    return 1.0 / (1.0 + (2 * N * w0 + N * (N - 2)) / 2**N)


def p_crit_huber(N: int, k: int) -> Fraction:
    """Threshold of the reference criterion: 1 / (1 + 2^−N (2N−2k−1) C(N,k))."""
    if not 1 <= k or 2 * k > N:
        raise OutOfDomain(f"requires 1 <= k <= N/2, got N={N}, k={k}")
    return 1 / (1 + Fraction((2 * N - 2 * k - 1) * binomial(N, k), 2**N))


def _p(W: DiagonalWitness) -> float:
    return p_crit_generic(W).p_crit


def figure_data(figure: str, n_max: Optional[int] = None, n_min: Optional[int] = None) -> list[dict]:
    """Rows backing the comparison plots.

    fig2: thresholds at k = N/2 for the projective, prop5 and thm6 witnesses.
    fig3a: refined projective minus reference criterion, per (N, k ≤ N/2).
    fig3b: (thm6 − reference) / (1 − reference), per (N, k ≤ N/2).
    fig4: W-state thresholds for cor8, prop9 (both starts) and the reference.
    """
    if figure not in FIGURES:
        raise InvalidArgument(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    lo, hi = FIGURE_RANGES[figure]
    lo = lo if n_min is None else max(lo, n_min)
    hi = hi if n_max is None else n_max
    if hi > _MAX_FIGURE_N:
        raise InvalidArgument(f"n_max is limited to {_MAX_FIGURE_N}, got {hi}")
    rows: list[dict] = []
    if figure == "fig2":
        for N in range(lo + lo % 2, hi + 1, 2):
            spec = DickeSpec(N, N // 2)
            rows.append(
                {
                    "N": N,
                    "projective": _p(projective(spec)),
                    "prop5": _p(prop5_witness(N)),
                    "thm6": _p(thm6_witness(spec)),
                }
            )
    elif figure in ("fig3a", "fig3b"):
        for N in range(lo, hi + 1):
            for k in range(1, N // 2 + 1):
                spec = DickeSpec(N, k)
                ref = float(p_crit_huber(N, k))
                if figure == "fig3a":
                    ours = _p(refined_projective(spec))
                    rows.append({"N": N, "k": k, "refined": ours, "huber": ref, "difference": ours - ref})
                else:
                    ours = _p(thm6_witness(spec))
                    rows.append(
                        {
                            "N": N,
                            "k": k,
                            "thm6": ours,
                            "huber": ref,
                            "normalized_difference": (ours - ref) / (1.0 - ref),
                        }
                    )
    else:
        for N in range(lo, hi + 1):
            rows.append(
                {
                    "N": N,
                    "cor8": _p(cor8_witness(N)),
                    "prop9": _p(prop9_witness(N)),
                    "prop9_optimized": _p(prop9_witness(N, start="optimized")),
                    "huber": float(p_crit_huber(N, 1)),
                }
            )
    return rows
