"""Single-qubit rotation sequences and their Pauli response functions.

V(θ) = R_{φ_N}(θ)···R_{φ_1}(θ) = A·1 + iB·σz + iC·σx + iD·σy, with
R_φ(θ) = exp(−iθ/2 (σx cos φ + σy sin φ)).

As a polynomial in w = e^{iθ/2}, R_φ = w·P⁻_φ + w⁻¹·P⁺_φ where P±_φ are the
projectors onto the ±1 eigenvectors of σx cos φ + σy sin φ.
"""

import logging
from dataclasses import dataclass

import numpy as np

from qspsim.numerics.base import UnsupportedParityError
from qspsim.numerics.models import PhaseSequence
from qspsim.numerics.trigpoly import LaurentPoly, TrigSeries, theta_grid

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)


def axis_projectors(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Projectors (P⁺, P⁻) onto the eigenvectors of σx cos φ + σy sin φ."""
    axis = np.array([[0, np.exp(-1j * phi)], [np.exp(1j * phi), 0]])
    return (IDENTITY + axis) / 2, (IDENTITY - axis) / 2


def rot_matrix(phi: float, theta) -> np.ndarray:
    """R_φ(θ) as a 2×2 matrix, or a stack of them for array θ."""
    half = np.asarray(theta, dtype=float) / 2
    c, s = np.cos(half), np.sin(half)
    out = np.empty((*half.shape, 2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 1, 1] = c
    out[..., 0, 1] = -1j * s * np.exp(-1j * phi)
    out[..., 1, 0] = -1j * s * np.exp(1j * phi)
    return out


def response_eval(p: PhaseSequence, theta) -> np.ndarray:
    """The product R_{φ_N}(θ)···R_{φ_1}(θ), index 1 applied first."""
    theta = np.asarray(theta, dtype=float)
    result = np.broadcast_to(IDENTITY, (*theta.shape, 2, 2)).copy()
    for phi in p.phases:
        result = rot_matrix(phi, theta) @ result
    return result


def pauli_components(M: np.ndarray) -> tuple[np.ndarray, ...]:
    """Split M = A·1 + iB·σz + iC·σx + iD·σy into (A, B, C, D).

    Works entrywise on stacks, so it applies both to matrices and to matrix
    Laurent coefficients.
    """
    m00, m01, m10, m11 = M[..., 0, 0], M[..., 0, 1], M[..., 1, 0], M[..., 1, 1]
    return (m00 + m11) / 2, (m00 - m11) / 2j, (m01 + m10) / 2j, (m01 - m10) / 2


def compose_pauli(A, B, C, D) -> np.ndarray:
    """Inverse of ``pauli_components``."""
    A, B, C, D = np.broadcast_arrays(*(np.asarray(x, dtype=complex) for x in (A, B, C, D)))
    out = np.empty((*A.shape, 2, 2), dtype=complex)
    out[..., 0, 0] = A + 1j * B
    out[..., 1, 1] = A - 1j * B
    out[..., 0, 1] = D + 1j * C
    out[..., 1, 0] = -D + 1j * C
    return out


@dataclass(frozen=True, eq=False)
class ResponseABCD:
    """Pauli response (A, B, C, D) of a rotation sequence."""

    A: TrigSeries
    B: TrigSeries
    C: TrigSeries
    D: TrigSeries

    @property
    def half_degree(self) -> int:
        return max(s.half_degree for s in (self.A, self.B, self.C, self.D))

    def matrix(self, theta) -> np.ndarray:
        """The represented 2×2 matrix (stack) at θ."""
        return compose_pauli(self.A(theta), self.B(theta), self.C(theta), self.D(theta))

    def unitarity_residual(self, grid_size: int = 1024) -> float:
        """Max over the grid of |A² + B² + C² + D² − 1|."""
        theta = theta_grid(grid_size)
        total = sum(s(theta) ** 2 for s in (self.A, self.B, self.C, self.D))
        return float(np.max(np.abs(total - 1)))

    def matrix_laurent(self) -> np.ndarray:
        """Coefficients M_j of V = Σ M_j w^j in w = e^{iθ/2}, j = −2K..2K.

        Row i of the returned (4K+1, 2, 2) array holds exponent i − 2K; odd
        exponents are zero.
        """
        K = self.half_degree
        laurent = [s.padded(K).to_laurent().coeffs for s in (self.A, self.B, self.C, self.D)]
        coeffs = np.zeros((4 * K + 1, 2, 2), dtype=complex)
        coeffs[::2] = compose_pauli(*laurent)
        return coeffs


def sequence_laurent(p: PhaseSequence) -> np.ndarray:
    """Expand the product of rotations as a matrix Laurent polynomial in e^{iθ/2}.

    Returns a (2N+1, 2, 2) array whose row i holds exponent i − N.
    """
    N = p.N
    coeffs = np.zeros((2 * N + 1, 2, 2), dtype=complex)
    coeffs[N] = IDENTITY
    for phi in p.phases:
        plus, minus = axis_projectors(phi)
        shifted = np.zeros_like(coeffs)
        shifted[1:] += minus @ coeffs[:-1]
        shifted[:-1] += plus @ coeffs[1:]
        coeffs = shifted
    return coeffs


def response_series(p: PhaseSequence) -> ResponseABCD:
    """Read the four real response series off the symbolic product.

    Raises:
        UnsupportedParityError: If the sequence has odd length
    """
    if p.N % 2:
        raise UnsupportedParityError(f"unsupported parity: N={p.N} is odd")
    K = p.N // 2
    integer_powers = sequence_laurent(p)[::2]
    components = pauli_components(integer_powers)
    A, B, C, D = (LaurentPoly(values, low=-K).to_trig() for values in components)
    logger.debug(f"Expanded response of {p.N} rotations to half-degree {K}")
    return ResponseABCD(A=A, B=B, C=C, D=D)


def response_from_matrix_laurent(coeffs: np.ndarray) -> ResponseABCD:
    """Inverse of ``ResponseABCD.matrix_laurent`` for even-degree coefficients."""
    if coeffs.shape[0] % 4 != 1:
        raise UnsupportedParityError("matrix polynomial does not have even degree")
    K = (coeffs.shape[0] - 1) // 4
    components = pauli_components(coeffs[::2])
    A, B, C, D = (LaurentPoly(values, low=-K).to_trig() for values in components)
    return ResponseABCD(A=A, B=B, C=C, D=D)
