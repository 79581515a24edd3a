"""Controlled-walk signal unitaries, phase-sequence assembly and simulation.

The QSP ancilla is the most significant tensor factor, so a dense operator
on ancilla ⊗ walk space is a 2×2 grid of walk-sized blocks.
"""

import logging
import time

import numpy as np
import scipy.linalg

from qspsim.numerics.base import DimensionMismatchError, NCapExceededError
from qspsim.numerics.jacobi_anger import choose_truncation, evolution_phase, target_series
from qspsim.numerics.models import PhaseSequence, SimulationReport
from qspsim.numerics.phasefind import DEFAULT_N_CAP, plus_projection, synthesize
from qspsim.numerics.su2_response import response_eval
from qspsim.numerics.trigpoly import PhaseFunction, sup_norm_gap, theta_grid
from qspsim.numerics.walk import SparseHamiltonian, WalkOperator, build_walk

logger = logging.getLogger(__name__)

SUCCESS_GRID_SIZE = 1024


def build_u_phi(walk: WalkOperator, phi: float, inverse_variant: bool = False) -> np.ndarray:
    """Signal unitary (e^{−iφσz/2} ⊗ 1)·U_0·(e^{iφσz/2} ⊗ 1).

    U_0 = |+⟩⟨+| ⊗ 1 + |−⟩⟨−| ⊗ W. On a walk eigenvector with eigenphase θ
    its ancilla block is e^{iθ/2}·R_φ(θ). The inverse variant is the adjoint
    of the forward variant at φ + π, whose block is e^{−iθ/2}·R_φ(θ).
    """
    if inverse_variant:
        return build_u_phi(walk, phi + np.pi).conj().T
    W = walk.W
    identity = np.eye(W.shape[0])
    same, cross = (identity + W) / 2, (identity - W) / 2
    return np.block(
        [
            [same, np.exp(-1j * phi) * cross],
            [np.exp(1j * phi) * cross, same],
        ]
    )


def build_v(walk: WalkOperator, p: PhaseSequence) -> np.ndarray:
    """V = U_N···U_1 with forward variants at odd and inverse variants at even positions."""
    V = np.eye(2 * walk.dimension, dtype=complex)
    for position, phi in enumerate(p.phases, start=1):
        V = build_u_phi(walk, phi, inverse_variant=position % 2 == 0) @ V
    return V


def _blocks(V: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    half = V.shape[0] // 2
    return V[:half, :half], V[:half, half:], V[half:, :half], V[half:, half:]


def walk_eigenphases(walk: WalkOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases θ and orthonormal eigenvectors of W from a complex Schur form."""
    triangular, vectors = scipy.linalg.schur(walk.W, output="complex")
    return np.angle(np.diag(triangular)), vectors


def project_plus(
    V: np.ndarray,
    walk: WalkOperator | None = None,
    phases: PhaseSequence | None = None,
) -> tuple[np.ndarray, float]:
    """⟨+|V|+⟩ on the walk space and the minimum success probability.

    The success probability is the smallest squared singular value of the
    projected operator. With ``phases`` it also covers |A + iC|² on a
    1024-point θ grid, and with ``walk`` the walk's own eigenphases.
    """
    v00, v01, v10, v11 = _blocks(V)
    projected = (v00 + v01 + v10 + v11) / 2
    success = float(np.min(np.linalg.svd(projected, compute_uv=False)) ** 2)
    if phases is not None:
        theta = theta_grid(SUCCESS_GRID_SIZE)
        if walk is not None:
            theta = np.concatenate([theta, walk_eigenphases(walk)[0]])
        success = min(success, float(np.min(np.abs(plus_projection(phases, theta)) ** 2)))
    return projected, success


def block_deviation(walk: WalkOperator, V: np.ndarray, p: PhaseSequence) -> float:
    """Max over walk eigenvectors of |ancilla block of V − response_eval(p, θ)|."""
    theta, vectors = walk_eigenphases(walk)
    blocks = np.empty((theta.size, 2, 2), dtype=complex)
    for (a, b), block in zip(((0, 0), (0, 1), (1, 0), (1, 1)), _blocks(V), strict=True):
        blocks[:, a, b] = np.einsum("ij,ik,kj->j", vectors.conj(), block, vectors)
    expected = response_eval(p, theta)
    return float(np.max(np.abs(blocks - expected)))


def exact_evolution(H: SparseHamiltonian, t: float) -> np.ndarray:
    """e^{−iHt} by dense eigendecomposition."""
    eigenvalues, vectors = np.linalg.eigh(H.dense())
    return (vectors * np.exp(-1j * eigenvalues * t)) @ vectors.conj().T


def operator_distance(U1: np.ndarray, U2: np.ndarray) -> float:
    """Largest singular value of U1 − U2 (no global phase is quotiented).

    Raises:
        DimensionMismatchError: If the operators differ in shape
    """
    if U1.shape != U2.shape:
        raise DimensionMismatchError(f"dimension mismatch: {U1.shape} vs {U2.shape}")
    return float(np.linalg.norm(U1 - U2, 2))


def simulate(
    H: SparseHamiltonian,
    t: float,
    eps: float,
    n_cap: int = DEFAULT_N_CAP,
    grid_size: int | None = None,
) -> SimulationReport:
    """Simulate e^{−iHt} to accuracy ε with the phase-programmed walk.

    Negative times flip the sign of the sine series, since e^{iτ sin θ} is the
    conjugate target.

    Raises:
        NCapExceededError: If the required sequence length exceeds ``n_cap``
        ZeroHamiltonianError: Propagated from ``build_walk``
        QSPError: Synthesis errors are propagated
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    start = time.perf_counter()
    walk = build_walk(H)
    tau = abs(t) * walk.X
    plan = choose_truncation(tau, eps)
    if plan.N > n_cap:
        raise NCapExceededError(plan.N, n_cap)

    A, C = target_series(plan)
    base_phase = evolution_phase(tau)
    h: PhaseFunction = base_phase if t >= 0 else (lambda theta: -base_phase(theta))
    if t < 0:
        C = -C
    gap_fourier = sup_norm_gap(A, C, h, grid_size)

    if plan.N == 0:
        phases, synthesis = PhaseSequence(), None
    else:
        phases, synthesis = synthesize(A, C, eps, target=h, grid_size=grid_size, n_cap=n_cap)

    V = build_v(walk, phases)
    v_residual = unitarity_residual(V)
    if v_residual > 1e-10:
        logger.warning(f"Sequence unitary residual {v_residual:.2e}")
    projected, success = project_plus(V, walk, phases)
    effective = walk.T.conj().T @ projected @ walk.T
    distance = operator_distance(effective, exact_evolution(H, t))
    deviation = block_deviation(walk, V, phases)

    report = SimulationReport(
        tau=tau,
        t=t,
        eps_target=eps,
        q=plan.q,
        N=plan.N,
        q_lower=plan.q_lower,
        eps_bound=plan.eps_bound,
        gap_fourier=gap_fourier,
        trace_distance=distance,
        success_prob_min=success,
        block_deviation=deviation,
        wall_time=time.perf_counter() - start,
        synthesis=synthesis,
        phases=list(phases.phases),
    )
    if not report.bounds_ok:
        logger.warning(
            f"Simulation bounds violated: distance {distance:.3e}, success {success:.6f}, eps {eps:.1e}"
        )
    logger.info(
        f"Simulated tau={tau:.4g} with N={plan.N}: distance {distance:.3e}, "
        f"success {success:.6f} in {report.wall_time:.2f}s"
    )
    return report


def unitarity_residual(U: np.ndarray) -> float:
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))
