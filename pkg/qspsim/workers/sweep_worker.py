"""Thread-pool worker running simulation sweeps over (τ, ε, trial) grids."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from qspsim.config import get_settings
from qspsim.models.domain import RunConfig, SweepRow
from qspsim.numerics.base import QSPError
from qspsim.numerics.qsp_engine import simulate
from qspsim.numerics.walk import SparseHamiltonian
from qspsim.services.hamiltonian_io import random_hamiltonian

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepPoint:
    """One isolated simulation job."""

    tau: float
    eps: float
    trial: int


@dataclass
class SweepResult:
    """Rows in grid order plus the points that raised."""

    rows: list[SweepRow] = field(default_factory=list)
    failures: list[tuple[SweepPoint, str]] = field(default_factory=list)

    @property
    def bounds_ok(self) -> bool:
        return not self.failures and all(row.bounds_ok for row in self.rows)


def sweep_points(config: RunConfig) -> list[SweepPoint]:
    """Grid points ordered by τ, then ε, then trial."""
    return [
        SweepPoint(tau=tau, eps=eps, trial=trial)
        for tau in config.tau_list
        for eps in config.eps_list
        for trial in range(config.trials)
    ]


def trial_hamiltonian(config: RunConfig, trial: int) -> SparseHamiltonian:
    """The random instance of one trial; shared by every (τ, ε) point."""
    settings = get_settings()
    n = config.qubits or settings.default_qubits
    d = config.sparsity or settings.default_sparsity
    return random_hamiltonian(n, d, np.random.default_rng([config.seed, trial]))


def run_point(point: SweepPoint, H: SparseHamiltonian, n_cap: int) -> SweepRow:
    """Simulate H for the time that makes τ = t·d·‖H‖_max equal point.tau."""
    t = point.tau / (H.d * H.h_max)
    report = simulate(H, t, point.eps, n_cap=n_cap)
    return SweepRow(
        tau=point.tau,
        eps_target=point.eps,
        q=report.q,
        N=report.N,
        q_lower=report.q_lower,
        gap_fourier=report.gap_fourier,
        trace_distance=report.trace_distance,
        success_prob_min=report.success_prob_min,
        wall_time_s=report.wall_time,
    )


def run_sweep(config: RunConfig, jobs: int = 1) -> SweepResult:
    """Run every grid point, up to ``jobs`` at a time.

    Results keep grid order regardless of completion order, so the output
    is deterministic for a fixed seed apart from wall times.
    """
    settings = get_settings()
    points = sweep_points(config)
    hamiltonians = {trial: trial_hamiltonian(config, trial) for trial in range(config.trials)}
    logger.info(f"Running sweep of {len(points)} points with {jobs} job(s)")

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = [
            executor.submit(run_point, point, hamiltonians[point.trial], settings.n_cap)
            for point in points
        ]

        result = SweepResult()
        for point, future in zip(points, futures, strict=True):
            try:
                result.rows.append(future.result())
            except QSPError as e:
                logger.error(f"Sweep point {point} failed: {e}", exc_info=True)
                result.failures.append((point, str(e)))

    violated = sum(not row.bounds_ok for row in result.rows)
    logger.info(
        f"Sweep finished: {len(result.rows)} rows, {len(result.failures)} failures, "
        f"{violated} bound violations"
    )
    return result
