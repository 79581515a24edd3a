"""Jacobi-Anger target series for h(θ) = −τ sin θ and its truncation order.

cos(τ sin θ) = J_0(τ) + 2 Σ_{k even ≥ 2} J_k(τ) cos kθ
sin(τ sin θ) = 2 Σ_{k odd} J_k(τ) sin kθ

Truncating after k = q − 1 costs at most 4τ^q / (2^q q!) in sup norm when
τ ≤ q − 1.
"""

import logging
import math
from collections.abc import Iterable

import numpy as np
from scipy.special import gammaln

from qspsim.numerics.models import TruncationPlan, TruncationRow
from qspsim.numerics.trigpoly import PhaseFunction, TrigSeries

logger = logging.getLogger(__name__)

RECURRENCE_MARGIN = 20
RESCALE_THRESHOLD = 1e250


def bessel_j(k_max: int, tau: float) -> np.ndarray:
    """J_0(τ)..J_{k_max}(τ) by Miller's backward recurrence.

    The recurrence J_{k−1} = (2k/τ) J_k − J_{k+1} starts from an arbitrary
    value well above max(k_max, τ) and is normalized with
    J_0 + 2 Σ_{k even ≥ 2} J_k = 1.
    """
    if tau < 0 or k_max < 0:
        raise ValueError("bessel_j requires tau >= 0 and k_max >= 0")
    if tau == 0:
        values = np.zeros(k_max + 1)
        values[0] = 1.0
        return values

    start = max(k_max, math.ceil(tau)) + RECURRENCE_MARGIN + math.ceil(tau)
    start += start % 2
    j = np.zeros(start + 2)
    j[start] = 1.0
    for k in range(start, 0, -1):
        j[k - 1] = (2 * k / tau) * j[k] - j[k + 1]
        if abs(j[k - 1]) > RESCALE_THRESHOLD:
            j[k - 1 :] /= RESCALE_THRESHOLD
    norm = j[0] + 2 * np.sum(j[2::2])
    return j[: k_max + 1] / norm


def truncation_bound(tau: float, q: int) -> float:
    """4τ^q / (2^q q!), evaluated in log space."""
    if tau == 0:
        return 0.0
    return float(np.exp(math.log(4) + q * math.log(tau / 2) - gammaln(q + 1)))


def lower_bound_q(tau: float, eps: float) -> int:
    """Largest q with ε < ½|sin(τ/q)|^q, or 0 when no q qualifies."""
    if tau == 0 or eps >= 0.5:
        return 0
    best = 0
    q = 1
    # |sin x| ≤ x and (τ/q)^q decreases for q ≥ τ, so the scan can stop there
    while True:
        if eps < 0.5 * abs(math.sin(tau / q)) ** q:
            best = q
        if q >= tau and 0.5 * (tau / q) ** q <= eps:
            return best
        q += 1


def choose_truncation(tau: float, eps: float) -> TruncationPlan:
    """Smallest q ≥ max(1, ⌈τ⌉ + 1) whose truncation bound is at most ε."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    q = max(1, math.ceil(tau) + 1) if tau > 0 else 1
    while truncation_bound(tau, q) > eps:
        q += 1
    plan = TruncationPlan(
        tau=tau,
        q=q,
        N=2 * (q - 1),
        eps_target=eps,
        eps_bound=truncation_bound(tau, q),
        q_lower=lower_bound_q(tau, eps) if eps < 0.5 else 0,
    )
    logger.debug(f"Truncation for tau={tau:g}, eps={eps:.1e}: q={plan.q}, N={plan.N}")
    return plan


def target_series(plan: TruncationPlan) -> tuple[TrigSeries, TrigSeries]:
    """(A, C) with A + iC ≈ e^{−iτ sin θ}, truncated after k = q − 1."""
    K = plan.q - 1
    J = bessel_j(K, plan.tau)
    cos = np.zeros(K + 1)
    sin = np.zeros(K)
    cos[0] = J[0]
    cos[2::2] = 2 * J[2::2]
    sin[0::2] = -2 * J[1::2]
    return TrigSeries(cos, np.zeros(K)), TrigSeries(np.zeros(K + 1), sin)


def evolution_phase(tau: float) -> PhaseFunction:
    """h(θ) = −τ sin θ."""

    def h(theta: np.ndarray) -> np.ndarray:
        return -tau * np.sin(theta)

    return h


def truncation_table(taus: Iterable[float], epsilons: Iterable[float]) -> list[TruncationRow]:
    """Chosen q, lower bound and their ratio over a (τ, ε) grid."""
    epsilons = list(epsilons)
    rows = []
    for tau in taus:
        for eps in epsilons:
            plan = choose_truncation(tau, eps)
            rows.append(
                TruncationRow(
                    tau=tau,
                    eps=eps,
                    q=plan.q,
                    N=plan.N,
                    q_lower=plan.q_lower,
                    eps_bound=plan.eps_bound,
                    ratio=plan.q / max(tau, plan.q_lower, 1),
                )
            )
    return rows
