"""Cross-module checks of the end-to-end error and scaling guarantees."""

import csv
import math

import numpy as np
import pytest
from scipy.special import jv

from conftest import random_phases
from qspsim.main import EXIT_OK, main
from qspsim.numerics.jacobi_anger import (
    bessel_j,
    evolution_phase,
    target_series,
    truncation_bound,
    truncation_table,
)
from qspsim.numerics.models import TruncationPlan
from qspsim.numerics.phasefind import layer_strip, plus_projection, synthesize
from qspsim.numerics.qsp_engine import build_u_phi, build_v, simulate, unitarity_residual
from qspsim.numerics.su2_response import response_eval, response_series
from qspsim.numerics.trigpoly import sup_norm_gap
from qspsim.numerics.walk import build_walk, eigenphase_check
from qspsim.services.hamiltonian_io import random_hamiltonian

# Measured gaps bottom out at double-precision roundoff long before the bound does
ROUNDOFF_FLOOR = 1e-14
# Frozen from a scan of τ ∈ 1..20, ε ∈ 1e-12..1e-2
MAX_OPTIMALITY_RATIO = 4.0


@pytest.mark.slow
def test_phase_sequence_roundtrip(rng):
    theta = rng.uniform(-np.pi, np.pi, 1000)
    for _ in range(100):
        N = 2 * int(rng.integers(1, 33))
        p = random_phases(rng, N)
        resp = response_series(p)

        recovered = layer_strip(resp)
        deviation = np.linalg.norm(response_eval(recovered, theta) - response_eval(p, theta), 2, axis=(1, 2))
        assert np.max(deviation) <= 1e-8

        synthesized, _ = synthesize(resp.A, resp.C, 0.0)
        gap = np.abs(plus_projection(synthesized, theta) - plus_projection(p, theta))
        assert np.max(gap) <= 1e-8


@pytest.mark.parametrize("tau", [1.0, 2.0, 5.0])
def test_jacobi_anger_bound_compliance(tau):
    h = evolution_phase(tau)
    for q in range(math.ceil(tau) + 1, 31):
        bound = truncation_bound(tau, q)
        plan = TruncationPlan(tau=tau, q=q, N=2 * (q - 1), eps_target=0.5, eps_bound=bound)
        A, C = target_series(plan)
        assert sup_norm_gap(A, C, h, grid_size=2048) <= bound + ROUNDOFF_FLOOR


@pytest.mark.slow
def test_simulation_guarantees(rng):
    for trial in range(10):
        d = 2 + trial % 2
        H = random_hamiltonian(2, d, rng)
        X = build_walk(H).X
        tau = rng.uniform(0.5, 10.0)
        for eps in (1e-2, 1e-4, 1e-6):
            report = simulate(H, tau / X, eps)
            assert report.N <= 64
            assert report.trace_distance <= 8 * eps
            assert report.success_prob_min >= 1 - 16 * eps
            assert report.block_deviation <= 1e-10


@pytest.mark.slow
def test_distance_shrinks_with_eps(rng):
    medians = []
    hamiltonians = [random_hamiltonian(2, 2, rng) for _ in range(10)]
    for eps in (1e-2, 1e-4, 1e-6):
        distances = [simulate(H, 2.0 / build_walk(H).X, eps).trace_distance for H in hamiltonians]
        medians.append(np.median(distances))
    assert medians[0] >= medians[1] >= medians[2]


def test_eigenphase_relation(rng):
    for trial in range(20):
        n = 1 + trial % 3
        d = int(rng.integers(1, min(3, 2**n) + 1))
        H = random_hamiltonian(n, d, rng)
        report = eigenphase_check(H, build_walk(H))
        assert report.max_deviation <= 1e-10


def test_bessel_accuracy():
    k = np.arange(41)
    for tau in np.linspace(0.0, 20.0, 21):
        values = bessel_j(40, tau)
        np.testing.assert_allclose(values, jv(k, tau), rtol=0, atol=1e-12)
        wide = bessel_j(80, tau)
        assert wide[0] + 2 * wide[2::2].sum() == pytest.approx(1.0, abs=1e-12)


def test_additive_scaling(tmp_path):
    taus = [float(tau) for tau in range(1, 21)]
    epsilons = [10.0**-k for k in range(2, 13)]
    rows = truncation_table(taus, epsilons)
    assert len(rows) == len(taus) * len(epsilons)
    for row in rows:
        assert row.eps_bound <= row.eps
        assert row.q_lower <= row.q
        assert row.ratio <= MAX_OPTIMALITY_RATIO

    out = tmp_path / "table.csv"
    argv = ["table", "--tau-list", ",".join(map(str, taus)), "--eps-list", ",".join(map(str, epsilons))]
    assert main([*argv, "--out", str(out)]) == EXIT_OK
    with out.open() as handle:
        assert len(list(csv.DictReader(handle))) == len(rows)


def test_operator_residuals(small_hamiltonian, rng):
    walk = build_walk(small_hamiltonian)
    assert walk.isometry_residual() <= 1e-12
    assert walk.unitarity_residual() <= 1e-12
    for phi in rng.uniform(-np.pi, np.pi, 3):
        assert unitarity_residual(build_u_phi(walk, phi)) <= 1e-12
    assert unitarity_residual(build_v(walk, random_phases(rng, 20))) <= 1e-10


@pytest.mark.slow
def test_sweep_grid(tmp_path):
    out = tmp_path / "sweep.csv"
    argv = ["sweep", "--tau-list", "1,2,5", "--eps-list", "1e-2,1e-4,1e-6", "--trials", "5"]
    assert main([*argv, "--seed", "11", "--jobs", "4", "--out", str(out)]) == EXIT_OK
    with out.open() as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 45
    for row in rows:
        assert float(row["trace_distance"]) <= 8 * float(row["eps_target"])
