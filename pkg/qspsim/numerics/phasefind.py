"""Phase synthesis: achievability, completion, anchoring and layer stripping.

The pipeline turns a cosine/sine pair (A, C) approximating e^{ih} into a
phase sequence whose ⟨+|V(θ)|+⟩ = A₂ + iC₁ stays within 8ε of e^{ih}:

    rescale → complete → anchor → layer_strip
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from qspsim.numerics.base import (
    ACHIEVABILITY_TOL,
    COEFF_TRIM_TOL,
    COMPLETION_FAIL_TOL,
    COMPLETION_TOL,
    PRESHRINK_ETA,
    ROUNDOFF_FLOOR,
    STRIPPING_TOL,
    UNIT_CIRCLE_TOL,
    IllConditionedCompletionError,
    StrippingStalledError,
    TargetNotCloseError,
    UnsupportedParityError,
)
from qspsim.numerics.models import AchievabilityReport, PhaseSequence, SynthesisDiagnostics
from qspsim.numerics.su2_response import (
    IDENTITY,
    ResponseABCD,
    axis_projectors,
    response_eval,
    rot_matrix,
)
from qspsim.numerics.trigpoly import (
    LaurentPoly,
    PhaseFunction,
    TrigSeries,
    default_grid_size,
    laurent_roots,
    theta_grid,
)

logger = logging.getLogger(__name__)

# Leading coefficients below this are treated as a cancelled (φ, φ+π) pair
DEGENERATE_LEADING_TOL = 1e-13
DEFAULT_N_CAP = 64
# Levenberg-Marquardt polish of stripped phases
REFINE_MAX_NFEV = 50
REFINE_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class CompletionResult:
    """B, D completing (A, C) to a unitary-valued response, plus the anchor angle δ."""

    B: TrigSeries
    D: TrigSeries
    unitarity_residual: float
    delta: float


def validate_achievable(
    A: TrigSeries, C: TrigSeries, N: int, grid_size: int | None = None
) -> AchievabilityReport:
    """Check whether (A, C) is the ⟨+|·|+⟩ projection of some N-phase sequence.

    Raises:
        UnsupportedParityError: If N is odd or not positive
    """
    if N <= 0 or N % 2:
        raise UnsupportedParityError(f"unsupported parity: N={N}")
    K = max(A.half_degree, C.half_degree)
    theta = theta_grid(grid_size or default_grid_size(2 * K))
    margin = float(np.min(1 - A(theta) ** 2 - C(theta) ** 2))
    residual = abs(A(0.0) - 1)
    degree_ok = A.effective_degree() <= N // 2 and C.effective_degree() <= N // 2
    parity_ok = A.is_cosine_type() and C.is_sine_type()
    verdict = (
        margin >= -ACHIEVABILITY_TOL and residual <= ACHIEVABILITY_TOL and degree_ok and parity_ok
    )
    return AchievabilityReport(
        condition1_margin=margin,
        condition2_residual=residual,
        degree_ok=degree_ok,
        parity_ok=parity_ok,
        verdict=verdict,
    )


def rescale(A: TrigSeries, C: TrigSeries, eps: float) -> tuple[TrigSeries, TrigSeries]:
    """Divide both series by 1 + ε so that A₁² + C₁² ≤ 1."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return A / (1 + eps), C / (1 + eps)


def _select_half_roots(roots: np.ndarray) -> np.ndarray:
    """One root from every conjugate-reciprocal pair (r, 1/r̄).

    Roots strictly inside the disk are kept. Roots near the unit circle come
    as numerically split double roots; each nearest pair is merged into one
    root on the circle.
    """
    radius = np.abs(roots)
    selected = list(roots[radius < 1 - UNIT_CIRCLE_TOL])
    near = list(roots[np.abs(radius - 1) <= UNIT_CIRCLE_TOL])
    while near:
        root = near.pop(0)
        if not near:
            logger.warning(f"Unpaired unit-circle root {root:.6g}")
            selected.append(root / abs(root))
            break
        partner = near.pop(int(np.argmin(np.abs(np.array(near) - root))))
        midpoint = (root + partner) / 2
        selected.append(midpoint / abs(midpoint))
    return np.array(selected, dtype=complex)


def _spectral_factor(p: np.ndarray, M: int) -> np.ndarray:
    """Real coefficients g_0..g_deg of G with |G(e^{iθ})|² = Σ_{|k|≤M} p_k e^{ikθ}.

    ``p`` holds p_{−M}..p_M. G is rebuilt from its roots by sampling on the
    unit circle and an inverse FFT, then scaled by least squares against P.
    """
    roots = laurent_roots(LaurentPoly(p, low=-M))
    selected = _select_half_roots(roots)
    degree = selected.size
    samples = max(64, 1 << int(np.ceil(np.log2(4 * (degree + 1)))))
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    monic = np.prod(z[:, None] - selected[None, :], axis=1)
    target = LaurentPoly(p, low=-M).at(z).real
    power = np.abs(monic) ** 2
    scale_sq = float(np.dot(target, power) / np.dot(power, power))
    values = np.sqrt(max(scale_sq, 0.0)) * monic
    coeffs = np.fft.fft(values) / samples
    logger.debug(
        f"Spectral factor: {roots.size} roots, {degree} selected, scale² {scale_sq:.3e}"
    )
    return coeffs[: degree + 1].real


def complete(A: TrigSeries, C: TrigSeries) -> CompletionResult:
    """Find B (cosine-type) and D (sine-type) with A² + B² + C² + D² = 1.

    Raises:
        IllConditionedCompletionError: If 1 − A² − C² is negative on the grid
            or the factorization residual exceeds 1e-6
    """
    K = max(A.half_degree, C.half_degree)
    A, C = A.padded(K), C.padded(K)
    theta = theta_grid(default_grid_size(4 * K))
    margin = float(np.min(1 - A(theta) ** 2 - C(theta) ** 2))
    if margin < -ACHIEVABILITY_TOL:
        raise IllConditionedCompletionError(-margin)

    # Only when the margin is negative: shrinking by η always adds √(2η) ≈ 1.4e-6 to B and D
    shrink = 1.0
    if margin < 0:
        shrink = 1 - max(PRESHRINK_ETA, -2 * margin)
        logger.debug(f"Pre-shrinking (A, C) by {shrink!r} (grid margin {margin:.2e})")

    modulus = A * A + C * C
    P = 1 - shrink**2 * modulus
    p = P.to_laurent().coeffs.real
    p = (p + p[::-1]) / 2
    floor = COEFF_TRIM_TOL * max(1.0, float(np.max(np.abs(modulus.cos_coeffs))))
    significant = np.nonzero(np.abs(p[2 * K :]) > floor)[0]
    M = int(significant[-1]) if significant.size else 0

    if M == 0:
        factor = np.array([np.sqrt(max(p[2 * K], 0.0)) if significant.size else 0.0])
    else:
        factor = _spectral_factor(p[2 * K - M : 2 * K + M + 1], M)

    # F = B + iD = z^{-s} G
    shift = (factor.size - 1) // 2
    width = max(shift, factor.size - 1 - shift)
    if width > K:
        raise IllConditionedCompletionError(float(np.sum(np.abs(factor[2 * K + 1 :]))))
    f = np.zeros(2 * width + 1)
    f[width - shift : width - shift + factor.size] = factor
    positive, negative = f[width + 1 :], f[:width][::-1]
    B = TrigSeries(np.concatenate([[f[width]], positive + negative]), np.zeros(width))
    D = TrigSeries(np.zeros(width + 1), positive - negative)
    if D.sin_coeffs.size and D.sin_coeffs[0] < 0:
        D = -D
    B, D = B.padded(K), D.padded(K)

    total = A * A + B * B + C * C + D * D - 1
    coeff_residual = float(
        max(np.max(np.abs(total.cos_coeffs)), np.max(np.abs(total.sin_coeffs), initial=0.0))
    )
    grid_residual = float(np.max(np.abs(total(theta))))
    residual = max(coeff_residual, grid_residual)
    if residual > COMPLETION_FAIL_TOL:
        raise IllConditionedCompletionError(residual)
    if residual > COMPLETION_TOL:
        logger.warning(f"Completion residual {residual:.2e} above {COMPLETION_TOL:.0e} (K={K})")

    delta = float(np.arctan2(B(0.0), A(0.0)))
    return CompletionResult(B=B, D=D, unitarity_residual=residual, delta=delta)


def anchor_correct(A1: TrigSeries, C1: TrigSeries, comp: CompletionResult) -> TrigSeries:
    """A₂ = A₁ cos δ + B sin δ, which equals 1 at θ = 0."""
    return A1 * np.cos(comp.delta) + comp.B * np.sin(comp.delta)


def anchored_response(A1: TrigSeries, C1: TrigSeries, comp: CompletionResult) -> ResponseABCD:
    """Full response completing (A₂, C₁).

    Conjugating by e^{−iδσz/2} on both sides rotates the (A, B) plane by δ
    and leaves C and D untouched, so (A₂, B₂, C₁, D) is unitary-valued with
    V(0) = 1.
    """
    A2 = anchor_correct(A1, C1, comp)
    B2 = comp.B * np.cos(comp.delta) - A1 * np.sin(comp.delta)
    return ResponseABCD(A=A2, B=B2, C=C1, D=comp.D)


def layer_strip(resp: ResponseABCD) -> PhaseSequence:
    """Peel one rotation per step off the matrix polynomial of ``resp``.

    Raises:
        StrippingStalledError: If a leading coefficient is not of the form
            P⁻_φ·X (or the remaining constant is not the identity)
    """
    coeffs = resp.matrix_laurent()
    n = (coeffs.shape[0] - 1) // 2
    reversed_phases: list[float] = []
    while n > 0:
        top, bottom = coeffs[-1], coeffs[0]
        weight = np.sqrt(np.sum(np.abs(top) ** 2) + np.sum(np.abs(bottom) ** 2))
        if weight < DEGENERATE_LEADING_TOL:
            if n < 2:
                raise StrippingStalledError(n, float(weight))
            logger.debug(f"Degenerate leading coefficient at degree {n}; inserting (0, π)")
            reversed_phases.extend([np.pi, 0.0])
            coeffs = coeffs[2:-2]
            n -= 2
            continue

        direction = -np.vdot(top[0], top[1]) + np.vdot(bottom[0], bottom[1])
        phi = float(np.angle(direction))
        plus, minus = axis_projectors(phi)
        residual = float(np.linalg.norm(plus @ top) + np.linalg.norm(minus @ bottom))
        if residual > STRIPPING_TOL:
            raise StrippingStalledError(n, residual)
        coeffs = minus @ coeffs[2:] + plus @ coeffs[:-2]
        reversed_phases.append(phi)
        n -= 1

    leftover = float(np.linalg.norm(coeffs[0] - IDENTITY))
    if leftover > STRIPPING_TOL:
        raise StrippingStalledError(0, leftover)
    return refine_phases(PhaseSequence(phases=tuple(reversed(reversed_phases))), resp)


def _sequence_matrix(phases: np.ndarray, theta: np.ndarray) -> np.ndarray:
    result = np.broadcast_to(IDENTITY, (*theta.shape, 2, 2)).copy()
    for phi in phases:
        result = rot_matrix(phi, theta) @ result
    return result


def _sequence_jacobian(phases: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """∂V(θ)/∂φ_j for every phase, shape (N, len(θ), 2, 2)."""
    N = phases.size
    rots = np.stack([rot_matrix(phi, theta) for phi in phases])
    prefix = np.empty((N + 1, *rots.shape[1:]), dtype=complex)
    suffix = np.empty_like(prefix)
    prefix[0] = IDENTITY
    suffix[N] = IDENTITY
    for j in range(N):
        prefix[j + 1] = rots[j] @ prefix[j]
    for j in range(N - 1, -1, -1):
        suffix[j] = suffix[j + 1] @ rots[j]

    s = np.sin(theta / 2)
    drot = np.zeros_like(rots)
    drot[..., 0, 1] = -s * np.exp(-1j * phases)[:, None]
    drot[..., 1, 0] = s * np.exp(1j * phases)[:, None]
    # V = suffix[j+1] · R_j · prefix[j]
    return suffix[1:] @ drot @ prefix[:-1]


def refine_phases(
    p: PhaseSequence, resp: ResponseABCD, grid_size: int | None = None
) -> PhaseSequence:
    """Least-squares polish of ``p`` so that response_eval(p, θ) matches ``resp``.

    Matrix entries on a θ grid are fitted with Levenberg-Marquardt and an
    analytic Jacobian. The input is returned unchanged when the fit does not
    lower the worst entrywise deviation.
    """
    if p.N == 0:
        return p
    theta = theta_grid(grid_size or max(64, 4 * (p.N + 1)))
    target = resp.matrix(theta)

    def residual(x: np.ndarray) -> np.ndarray:
        diff = (_sequence_matrix(x, theta) - target).ravel()
        return np.concatenate([diff.real, diff.imag])

    def jacobian(x: np.ndarray) -> np.ndarray:
        J = _sequence_jacobian(x, theta).reshape(x.size, -1).T
        return np.concatenate([J.real, J.imag])

    x0 = np.asarray(p.phases, dtype=float)
    before = float(np.max(np.abs(residual(x0))))
    if before <= ROUNDOFF_FLOOR / 100:
        return p
    fit = least_squares(
        residual,
        x0,
        jac=jacobian,
        method="lm",
        xtol=REFINE_TOL,
        ftol=REFINE_TOL,
        gtol=REFINE_TOL,
        max_nfev=REFINE_MAX_NFEV,
    )
    after = float(np.max(np.abs(fit.fun)))
    logger.debug(f"Phase refinement for N={p.N}: deviation {before:.2e} -> {after:.2e}")
    if not np.all(np.isfinite(fit.x)) or after >= before:
        return p
    return PhaseSequence(phases=tuple(float(phi) for phi in fit.x))


def plus_projection(p: PhaseSequence, theta: np.ndarray) -> np.ndarray:
    """⟨+|V(θ)|+⟩ = A(θ) + iC(θ) of a phase sequence."""
    V = response_eval(p, theta)
    return V.sum(axis=(-2, -1)) / 2


def synthesize(
    A: TrigSeries,
    C: TrigSeries,
    eps: float,
    target: PhaseFunction | None = None,
    grid_size: int | None = None,
    n_cap: int = DEFAULT_N_CAP,
) -> tuple[PhaseSequence, SynthesisDiagnostics]:
    """Compile (A, C) ≈ e^{ih} into a phase sequence.

    Args:
        A: Cosine-type series
        C: Sine-type series
        eps: Sup-norm accuracy of (A, C) against the target
        target: Phase function h; gaps are measured against A + iC when omitted
        grid_size: Verification grid size (default max(1024, 8N))
        n_cap: Sequence lengths above this only produce a warning here

    Returns:
        The phase sequence and the measured error chain

    Raises:
        UnsupportedParityError: If A is not cosine-type or C is not sine-type
        TargetNotCloseError: If (A, C) is more than 1.1·eps away from the target
        IllConditionedCompletionError: Propagated from ``complete``
        StrippingStalledError: Propagated from ``layer_strip``
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if not (A.is_cosine_type() and C.is_sine_type()):
        raise UnsupportedParityError("unsupported parity: A must be cosine-type, C sine-type")
    K = max(A.half_degree, C.half_degree)
    N = 2 * K
    if N > n_cap:
        logger.warning(f"Synthesizing N={N} beyond the supported cap {n_cap}")

    grid_size = grid_size or default_grid_size(N)
    theta = theta_grid(grid_size)
    values = A(theta) + 1j * C(theta)
    expected = np.exp(1j * np.asarray(target(theta))) if target is not None else values

    gap_input = float(np.max(np.abs(values - expected)))
    if target is not None and gap_input > 1.1 * eps + ROUNDOFF_FLOOR:
        raise TargetNotCloseError(gap_input, eps)

    A1, C1 = rescale(A, C, eps)
    rescaled = values / (1 + eps)
    comp = complete(A1, C1)
    resp = anchored_response(A1, C1, comp)
    phases = layer_strip(resp)

    projected = plus_projection(phases, theta)
    gap_final = float(np.max(np.abs(projected - expected)))
    min_success = float(np.min(np.abs(projected) ** 2))
    bounds_ok = (
        gap_final <= 8 * eps + ROUNDOFF_FLOOR and min_success >= 1 - 16 * eps - ROUNDOFF_FLOOR
    )
    if not bounds_ok:
        logger.warning(
            f"Synthesis bounds violated: gap {gap_final:.3e}, success {min_success:.6f}, eps {eps:.1e}"
        )

    diagnostics = SynthesisDiagnostics(
        eps_in=eps,
        N=phases.N,
        gap_input=gap_input,
        gap_after_rescale=float(np.max(np.abs(rescaled - expected))),
        min_modulus_after_rescale=float(np.min(np.abs(rescaled))),
        delta=comp.delta,
        unitarity_residual=comp.unitarity_residual,
        gap_anchor=float(np.max(np.abs(resp.A(theta) - A1(theta)))),
        gap_final=gap_final,
        min_success_prob=min_success,
        grid_size=grid_size,
        bounds_ok=bounds_ok,
    )
    logger.info(f"Synthesized N={phases.N} phases (gap {gap_final:.3e}, eps {eps:.1e})")
    return phases, diagnostics
