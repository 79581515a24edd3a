from dataclasses import replace

import numpy as np
import pytest
from scipy.stats import unitary_group

from qspsim.numerics.base import (
    HamiltonianParseError,
    NotHermitianError,
    SparsityExceededError,
    UnmatchedEigenphaseError,
    ZeroHamiltonianError,
)
from qspsim.numerics.walk import (
    build_walk,
    eigenphase_check,
    from_entries,
    oracle_f,
    oracle_h,
    predicted_eigenvalues,
)
from qspsim.services.hamiltonian_io import random_hamiltonian


def nearest_distance(values: np.ndarray, target: complex) -> float:
    return float(np.min(np.abs(values - target)))


class TestFromEntries:
    def test_diagonal(self):
        H = from_entries(1, 1, [(0, 0, 1.0), (1, 1, -1.0)])
        assert H.d == 1
        assert H.h_max == 1.0
        np.testing.assert_array_equal(H.dense(), np.diag([1.0, -1.0]))

    def test_missing_mirror(self):
        with pytest.raises(NotHermitianError, match="not Hermitian"):
            from_entries(1, 1, [(0, 1, 1j)])

    def test_explicit_mirror(self):
        H = from_entries(1, 1, [(0, 1, 1j), (1, 0, -1j)])
        assert oracle_h(H, 1, 0) == -1j

    def test_hermitize_fills_mirror(self):
        H = from_entries(1, 1, [(1, 0, 2 - 1j)], hermitize=True)
        assert H.element(0, 1) == 2 + 1j
        np.testing.assert_array_equal(H.dense(), H.dense().conj().T)

    def test_mismatched_mirror(self):
        with pytest.raises(NotHermitianError):
            from_entries(1, 1, [(0, 1, 1.0), (1, 0, 1.1)])

    def test_complex_diagonal(self):
        with pytest.raises(NotHermitianError):
            from_entries(1, 1, [(0, 0, 1 + 1e-6j)])

    def test_sparsity_exceeded(self):
        entries = [(0, 0, 1.0), (0, 1, 0.5), (1, 0, 0.5)]
        with pytest.raises(SparsityExceededError, match="sparsity exceeded"):
            from_entries(1, 1, entries)

    def test_index_out_of_range(self):
        with pytest.raises(HamiltonianParseError, match="index out of range"):
            from_entries(1, 1, [(4, 4, 1.0)])

    def test_zeros_are_dropped(self):
        H = from_entries(1, 1, [(0, 0, 0.0), (1, 1, 2.0)])
        assert list(H.entries) == [(1, 1)]

    def test_random_instance_h_max(self, rng):
        H = random_hamiltonian(2, 3, rng)
        assert H.h_max == pytest.approx(np.max(np.abs(H.dense())))
        np.testing.assert_array_equal(H.dense(), H.dense().conj().T)
        assert max(np.count_nonzero(row) for row in H.dense()) <= 3


class TestOracles:
    def test_diagonal_rows_point_at_themselves(self):
        H = from_entries(2, 1, [(j, j, float(j + 1)) for j in range(4)])
        assert [oracle_f(H, j, 0) for j in range(4)] == [0, 1, 2, 3]

    def test_padding_follows_nonzeros(self):
        entries = [(0, 1, 1.0), (1, 0, 1.0), (0, 3, 2.0), (3, 0, 2.0)]
        H = from_entries(2, 3, entries)
        assert [oracle_f(H, 0, l) for l in range(3)] == [1, 3, 0]

    def test_slots_are_distinct(self, rng):
        H = random_hamiltonian(2, 3, rng)
        for j in range(H.dimension):
            slots = [oracle_f(H, j, l) for l in range(H.d)]
            assert len(set(slots)) == H.d

    def test_slots_cover_row_norm(self, rng):
        H = random_hamiltonian(3, 2, rng)
        dense = H.dense()
        for j in range(H.dimension):
            total = sum(abs(oracle_h(H, j, oracle_f(H, j, l))) for l in range(H.d))
            assert total == pytest.approx(np.sum(np.abs(dense[j])))

    def test_slot_out_of_range(self):
        H = from_entries(1, 1, [(0, 0, 1.0)])
        with pytest.raises(ValueError):
            oracle_f(H, 0, 1)


class TestBuildWalk:
    def test_zero_hamiltonian(self):
        with pytest.raises(ZeroHamiltonianError, match="zero Hamiltonian"):
            build_walk(from_entries(1, 1, []))

    def test_opposite_diagonal_gives_quarter_turns(self):
        h = 0.7
        H = from_entries(1, 1, [(0, 0, h), (1, 1, -h)])
        walk = build_walk(H)
        assert walk.X == pytest.approx(h)
        eigenvalues = np.linalg.eigvals(walk.W)
        assert nearest_distance(eigenvalues, 1j) <= 1e-10
        assert nearest_distance(eigenvalues, -1j) <= 1e-10

    def test_zero_eigenvalue_gives_zero_and_pi(self):
        H = from_entries(1, 2, [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)])
        eigenvalues = np.linalg.eigvals(build_walk(H).W)
        assert nearest_distance(eigenvalues, 1.0) <= 1e-10
        assert nearest_distance(eigenvalues, -1.0) <= 1e-10

    def test_residuals(self, small_hamiltonian):
        walk = build_walk(small_hamiltonian)
        assert walk.dimension == 64
        assert walk.isometry_residual() <= 1e-12
        assert walk.unitarity_residual() <= 1e-12
        assert walk.swap_residual() <= 1e-12
        np.testing.assert_allclose(walk.S, walk.S.conj().T)

    def test_projected_swap_reproduces_hamiltonian(self, small_hamiltonian):
        walk = build_walk(small_hamiltonian)
        projected = walk.T.conj().T @ walk.S @ walk.T
        np.testing.assert_allclose(projected, small_hamiltonian.dense() / walk.X, atol=1e-12)

    def test_negative_diagonal_reproduced(self):
        H = from_entries(1, 2, [(0, 0, -0.5), (0, 1, 0.3j), (1, 0, -0.3j), (1, 1, 0.2)])
        walk = build_walk(H)
        projected = walk.T.conj().T @ walk.S @ walk.T
        np.testing.assert_allclose(projected, H.dense() / walk.X, atol=1e-12)


class TestEigenphaseCheck:
    def test_diagonal_matches_exactly(self):
        H = from_entries(2, 1, [(0, 0, 0.5), (1, 1, -1.0), (2, 2, 0.25), (3, 3, 0.0)])
        report = eigenphase_check(H, build_walk(H))
        assert report.max_deviation <= 1e-12
        assert report.bounds_ok

    def test_scaled_identity(self):
        c = 0.8
        H = from_entries(2, 1, [(j, j, c) for j in range(4)])
        walk = build_walk(H)
        report = eigenphase_check(H, walk)
        np.testing.assert_allclose(report.eigenvalues, [c] * 4)
        expected = np.angle(predicted_eigenvalues(np.array([c]), walk.X))
        assert set(np.round(report.predicted_phases, 12)) == set(np.round(expected, 12))

    @pytest.mark.parametrize("n, d", [(1, 2), (2, 2), (2, 3), (3, 2)])
    def test_random_instances(self, rng, n, d):
        H = random_hamiltonian(n, d, rng)
        report = eigenphase_check(H, build_walk(H))
        assert report.max_deviation <= 1e-10
        assert report.reconstruction_error <= 1e-12
        assert report.max_spectral_ratio <= 1 + 1e-12
        assert len(report.predicted_phases) == 2 * 2**n

    def test_degenerate_eigenvalues_each_get_a_pair(self):
        H = from_entries(2, 1, [(0, 1, 0.5), (1, 0, 0.5), (2, 3, 0.5), (3, 2, 0.5)])
        report = eigenphase_check(H, build_walk(H))
        np.testing.assert_allclose(report.eigenvalues, [-0.5, -0.5, 0.5, 0.5], atol=1e-14)
        assert report.max_deviation <= 1e-10

    def test_isospectral_scramble_is_rejected(self, small_hamiltonian):
        walk = build_walk(small_hamiltonian)
        U = unitary_group.rvs(walk.dimension, random_state=5)
        scrambled = replace(walk, W=U @ walk.W @ U.conj().T)
        with pytest.raises(UnmatchedEigenphaseError, match="unmatched eigenphase"):
            eigenphase_check(small_hamiltonian, scrambled)
