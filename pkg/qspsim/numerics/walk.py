"""Childs quantum walk W = iS(2TT† − 1) for d-sparse Hermitian matrices.

Each of the two registers holds n index qubits followed by one flag qubit,
so a register basis state |j, b⟩ has index 2j + b and the joint state
|x⟩|y⟩ has index x·2^{n+1} + y.

T maps |j⟩ to |j, 0⟩ ⊗ (1/√d) Σ_l [g_{j,f} / √‖H‖_max |f, 0⟩
+ √(1 − |H_{j,f}|/‖H‖_max) |f, 1⟩] with f = f(j, l). The amplitudes g
satisfy |g_{jk}|² = |H_{jk}| and g_{jk}·conj(g_{kj}) = H_{kj} off the
diagonal. A negative diagonal entry cannot be written as |g|², so S carries
a −1 on the self-loop state |j, 0⟩|j, 0⟩ of such rows; S stays a Hermitian
involution and T†ST = H/X exactly.
"""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from qspsim.numerics.base import (
    EIGENPHASE_MATCH_TOL,
    HERMITIAN_TOL,
    HamiltonianParseError,
    NotHermitianError,
    SparsityExceededError,
    UnmatchedEigenphaseError,
    ZeroHamiltonianError,
)
from qspsim.numerics.models import EigenphaseReport

logger = logging.getLogger(__name__)

# T|λ⟩ and ST|λ⟩ are parallel when |λ| = X
SUBSPACE_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SparseHamiltonian:
    """d-sparse Hermitian matrix of dimension 2ⁿ with oracle access."""

    n: int
    d: int
    entries: Mapping[tuple[int, int], complex]
    _slots: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 1 <= self.d <= 2**self.n:
            raise ValueError(f"sparsity d={self.d} must lie in [1, {2**self.n}]")
        entries = {}
        for (j, k), value in sorted(self.entries.items()):
            if not (0 <= j < self.dimension and 0 <= k < self.dimension):
                raise HamiltonianParseError(f"index out of range: ({j}, {k})")
            if value != 0:
                entries[(j, k)] = complex(value)
        for (j, k), value in entries.items():
            if entries.get((k, j), 0) != value.conjugate():
                raise NotHermitianError(f"not Hermitian at ({j}, {k})")

        slots = []
        for j in range(self.dimension):
            columns = [k for (row, k) in entries if row == j]
            if len(columns) > self.d:
                raise SparsityExceededError(
                    f"sparsity exceeded: row {j} has {len(columns)} nonzeros > d={self.d}"
                )
            padding = ([j] if j not in columns else []) + [
                k for k in range(self.dimension) if k != j and k not in columns
            ]
            slots.append(tuple(columns + padding[: self.d - len(columns)]))

        object.__setattr__(self, "entries", MappingProxyType(entries))
        object.__setattr__(self, "_slots", tuple(slots))

    @property
    def dimension(self) -> int:
        return 2**self.n

    @property
    def h_max(self) -> float:
        return max((abs(v) for v in self.entries.values()), default=0.0)

    def element(self, j: int, k: int) -> complex:
        return self.entries.get((j, k), 0j)

    def dense(self) -> np.ndarray:
        H = np.zeros((self.dimension, self.dimension), dtype=complex)
        for (j, k), value in self.entries.items():
            H[j, k] = value
        return H


def from_entries(
    n: int,
    d: int,
    entries: Iterable[tuple[int, int, complex]],
    hermitize: bool = False,
) -> SparseHamiltonian:
    """Validate raw (row, column, value) triples into a SparseHamiltonian.

    Args:
        n: Number of index qubits
        d: Declared sparsity
        entries: Matrix elements; zeros are dropped
        hermitize: Fill in missing mirror elements with their conjugates

    Raises:
        HamiltonianParseError: On out-of-range or duplicate indices
        NotHermitianError: If mirror elements disagree beyond 1e-12
        SparsityExceededError: If a row holds more than d nonzeros
    """
    dimension = 2**n
    values: dict[tuple[int, int], complex] = {}
    for j, k, value in entries:
        if not (0 <= j < dimension and 0 <= k < dimension):
            raise HamiltonianParseError(f"index out of range: ({j}, {k}) for n={n}")
        if (j, k) in values:
            raise HamiltonianParseError(f"duplicate entry ({j}, {k})")
        values[(j, k)] = complex(value)

    symmetric: dict[tuple[int, int], complex] = {}
    for (j, k), value in values.items():
        if value == 0:
            continue
        if j == k:
            if abs(value.imag) > HERMITIAN_TOL:
                raise NotHermitianError(f"not Hermitian: diagonal ({j}, {j}) is not real")
            symmetric[(j, j)] = complex(value.real)
            continue
        mirror = values.get((k, j))
        if mirror is None and not hermitize:
            raise NotHermitianError(f"not Hermitian: ({j}, {k}) has no mirror element")
        if mirror is not None and abs(mirror - value.conjugate()) > HERMITIAN_TOL:
            raise NotHermitianError(f"not Hermitian: ({j}, {k}) and ({k}, {j}) disagree")
        if j < k:
            upper = value
        else:
            upper = mirror if mirror is not None else value.conjugate()
        row, col = min(j, k), max(j, k)
        symmetric[(row, col)] = upper
        symmetric[(col, row)] = upper.conjugate()
    return SparseHamiltonian(n=n, d=d, entries=symmetric)


def oracle_f(H: SparseHamiltonian, j: int, l: int) -> int:
    """Column of the l-th nonzero in row j; short rows are padded with j first."""
    if not 0 <= l < H.d:
        raise ValueError(f"slot {l} outside [0, {H.d})")
    return H._slots[j][l]


def oracle_h(H: SparseHamiltonian, j: int, k: int) -> complex:
    return H.element(j, k)


def _amplitude(H: SparseHamiltonian, j: int, k: int) -> complex:
    value = H.element(j, k)
    if value == 0:
        return 0j
    if j == k:
        return complex(np.sqrt(abs(value)))
    if j < k:
        return complex(np.sqrt(np.conj(value)))
    upper = H.element(k, j)
    return upper / np.conj(np.sqrt(np.conj(upper)))


@dataclass(frozen=True, eq=False)
class WalkOperator:
    """Dense walk unitary with its isometry T, swap S and rescaling X = d·‖H‖_max."""

    W: np.ndarray
    T: np.ndarray
    S: np.ndarray
    X: float
    n: int
    d: int

    @property
    def dimension(self) -> int:
        return self.W.shape[0]

    def isometry_residual(self) -> float:
        gram = self.T.conj().T @ self.T
        return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))

    def unitarity_residual(self) -> float:
        return float(np.max(np.abs(self.W.conj().T @ self.W - np.eye(self.dimension))))

    def swap_residual(self) -> float:
        return float(np.max(np.abs(self.S @ self.S - np.eye(self.dimension))))


def build_walk(H: SparseHamiltonian) -> WalkOperator:
    """Build W = iS(2TT† − 1) as dense matrices.

    Raises:
        ZeroHamiltonianError: If H has no nonzero entries
    """
    h_max = H.h_max
    if h_max == 0:
        raise ZeroHamiltonianError("zero Hamiltonian")
    dim = H.dimension
    register = 2 * dim
    full = register * register
    X = H.d * h_max

    T = np.zeros((full, dim), dtype=complex)
    for j in range(dim):
        state = np.zeros(register, dtype=complex)
        for l in range(H.d):
            f = oracle_f(H, j, l)
            weight = abs(H.element(j, f)) / h_max
            state[2 * f] += _amplitude(H, j, f) / np.sqrt(H.d * h_max)
            state[2 * f + 1] += np.sqrt(max(0.0, 1 - weight) / H.d)
        offset = 2 * j * register
        T[offset : offset + register, j] = state

    index = np.arange(full)
    swapped = (index % register) * register + index // register
    signs = np.ones(full)
    for j in range(dim):
        if H.element(j, j).real < 0:
            signs[2 * j * register + 2 * j] = -1.0
    S = np.zeros((full, full), dtype=complex)
    S[swapped, index] = signs

    W = 1j * S @ (2 * T @ T.conj().T - np.eye(full))
    logger.debug(f"Built walk of dimension {full} for n={H.n}, d={H.d}, X={X:.4g}")
    return WalkOperator(W=W, T=T, S=S, X=X, n=H.n, d=H.d)


def predicted_eigenvalues(eigenvalues: np.ndarray, X: float) -> np.ndarray:
    """e^{iθ} for θ = ±arcsin(λ/X) + (1∓1)π/2, both branches per λ."""
    mu = np.clip(np.asarray(eigenvalues) / X, -1.0, 1.0)
    radial = np.sqrt(1 - mu**2)
    return np.concatenate([radial + 1j * mu, -radial + 1j * mu])


def _pair_mismatch(found: np.ndarray, pair: np.ndarray) -> float:
    """Phase distance between walk eigenvalues and the predicted pair, best assignment."""
    if found.size == 1:
        return float(np.max(np.abs(np.angle(pair / found[0]))))
    straight = np.abs(np.angle(found / pair))
    crossed = np.abs(np.angle(found / pair[::-1]))
    return float(min(np.max(straight), np.max(crossed)))


def eigenphase_check(H: SparseHamiltonian, walk: WalkOperator) -> EigenphaseReport:
    """Match every Hamiltonian eigenvalue with its own two walk eigenphases.

    For each eigenvector |λ⟩, W is compressed to span{T|λ⟩, ST|λ⟩}. The
    deviation of λ is the larger of the eigenphase mismatch of that block and
    the leakage ‖WQ − Q(Q†WQ)‖ out of the subspace.

    Raises:
        UnmatchedEigenphaseError: If some λ deviates by more than 1e-6
    """
    dense = H.dense()
    eigenvalues, vectors = np.linalg.eigh(dense)
    predicted = predicted_eigenvalues(eigenvalues, walk.X)
    lifted = walk.T @ vectors
    swapped = walk.S @ lifted

    dim = eigenvalues.size
    deviations = np.empty(dim)
    for j in range(dim):
        basis, singular, _ = np.linalg.svd(
            np.column_stack([lifted[:, j], swapped[:, j]]), full_matrices=False
        )
        basis = basis[:, singular > SUBSPACE_RANK_TOL * singular[0]]
        image = walk.W @ basis
        block = basis.conj().T @ image
        leakage = float(np.linalg.norm(image - basis @ block, 2))
        mismatch = _pair_mismatch(np.linalg.eigvals(block), predicted[[j, j + dim]])
        deviations[j] = max(mismatch, leakage)
    worst = float(np.max(deviations))
    if worst > EIGENPHASE_MATCH_TOL:
        raise UnmatchedEigenphaseError(f"unmatched eigenphase: deviation {worst:.3e}")

    projected = walk.T.conj().T @ walk.S @ walk.T
    reconstruction = float(np.max(np.abs(projected - dense / walk.X)))
    report = EigenphaseReport(
        n=H.n,
        d=H.d,
        X=walk.X,
        eigenvalues=eigenvalues.tolist(),
        predicted_phases=np.angle(predicted).tolist(),
        max_deviation=worst,
        reconstruction_error=reconstruction,
        max_spectral_ratio=float(np.max(np.abs(eigenvalues)) / walk.X),
        isometry_residual=walk.isometry_residual(),
        unitarity_residual=walk.unitarity_residual(),
        swap_residual=walk.swap_residual(),
    )
    logger.info(f"Eigenphase check: max deviation {worst:.2e} over {eigenvalues.size} eigenvalues")
    return report
