"""CLI-level domain models using Pydantic."""

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, model_validator


# Enums
class CommandType(str, Enum):
    """Subcommand selected on the command line."""

    PHASES = "phases"
    SIMULATE = "simulate"
    SWEEP = "sweep"
    WALK_CHECK = "walk-check"
    BESSEL = "bessel"
    TABLE = "table"


class TargetKind(str, Enum):
    """How the `phases` command obtains the (A, C) pair."""

    JACOBI_ANGER = "jacobi-anger"  # closed-form Bessel coefficients
    FOURIER = "fourier"  # sampled Fourier projection of e^{−iτ sin θ}


# Domain Models
class RunConfig(BaseModel):
    """One CLI invocation, merged from the --config file and explicit flags."""

    command: CommandType
    hamiltonian_path: Path | None = None
    tau: float | None = Field(default=None, ge=0)
    time: float | None = None
    eps: float = Field(default=1e-3, gt=0, lt=1)
    target: TargetKind = TargetKind.JACOBI_ANGER
    kmax: int = Field(default=20, ge=0)

    # Sweep / table grids
    tau_list: list[float] = Field(default_factory=lambda: [1.0, 2.0, 5.0])
    eps_list: list[float] = Field(default_factory=lambda: [1e-2, 1e-4, 1e-6])
    trials: int = Field(default=5, ge=1)
    seed: int = 0
    qubits: int | None = Field(default=None, ge=1)
    sparsity: int | None = Field(default=None, ge=1)
    jobs: int | None = Field(default=None, ge=1)

    out_path: Path | None = None

    @model_validator(mode="after")
    def _check_required(self) -> "RunConfig":
        needs_hamiltonian = {CommandType.SIMULATE, CommandType.WALK_CHECK}
        if self.command in needs_hamiltonian and self.hamiltonian_path is None:
            raise ValueError(f"{self.command.value} requires --hamiltonian")
        if self.command == CommandType.SIMULATE and self.time is None:
            raise ValueError("simulate requires --time")
        if self.command in {CommandType.PHASES, CommandType.BESSEL} and self.tau is None:
            raise ValueError(f"{self.command.value} requires --tau")
        if self.command in {CommandType.SWEEP, CommandType.TABLE}:
            if not self.tau_list or not self.eps_list:
                raise ValueError(f"{self.command.value} requires non-empty --tau-list and --eps-list")
            if any(tau < 0 for tau in self.tau_list):
                raise ValueError("--tau-list values must be non-negative")
            if any(not 0 < eps < 1 for eps in self.eps_list):
                raise ValueError("--eps-list values must lie in (0, 1)")
        return self


class HamiltonianFile(BaseModel):
    """On-disk JSON form of a sparse Hamiltonian.

    Each entry is [row, column, real part, imaginary part].
    """

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    entries: list[tuple[int, int, float, float]] = Field(default_factory=list)
    hermitize: bool = False


class SweepRow(BaseModel):
    """One (τ, ε, trial) point of a simulation sweep."""

    tau: float
    eps_target: float
    q: int
    N: int
    q_lower: int
    gap_fourier: float
    trace_distance: float
    success_prob_min: float
    wall_time_s: float

    @property
    def bounds_ok(self) -> bool:
        return (
            self.trace_distance <= 8 * self.eps_target
            and self.success_prob_min >= 1 - 16 * self.eps_target
        )


SWEEP_COLUMNS = list(SweepRow.model_fields)
