"""Serializable models for phase programs and run diagnostics."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


def normalize_phase(phi: float) -> float:
    """Map an angle into (−π, π]."""
    wrapped = float(np.pi - np.mod(np.pi - phi, 2 * np.pi))
    # mod can round up to 2π for arguments just below a multiple of it
    return wrapped + 2 * np.pi if wrapped <= -np.pi else wrapped


class PhaseSequence(BaseModel):
    """Ordered rotation phases φ_1..φ_N; index 1 acts first."""

    model_config = ConfigDict(frozen=True)

    phases: tuple[float, ...] = ()

    @field_validator("phases")
    @classmethod
    def _normalize(cls, phases: tuple[float, ...]) -> tuple[float, ...]:
        if not all(math.isfinite(phi) for phi in phases):
            raise ValueError("phases must be finite")
        return tuple(normalize_phase(phi) for phi in phases)

    @property
    def N(self) -> int:
        return len(self.phases)

    def __len__(self) -> int:
        return len(self.phases)


class AchievabilityReport(BaseModel):
    """Outcome of checking the four achievability conditions for (A, C)."""

    condition1_margin: float  # min over grid of 1 − A² − C²
    condition2_residual: float  # |A(0) − 1|
    degree_ok: bool
    parity_ok: bool
    verdict: bool


class SynthesisDiagnostics(BaseModel):
    """Measured error chain of one phase synthesis."""

    eps_in: float
    N: int
    gap_input: float = 0.0
    gap_after_rescale: float = 0.0
    min_modulus_after_rescale: float = 1.0
    delta: float = 0.0
    unitarity_residual: float = 0.0
    gap_anchor: float = 0.0
    gap_final: float = 0.0
    min_success_prob: float = 1.0
    grid_size: int = 0
    bounds_ok: bool = True


class TruncationPlan(BaseModel):
    """Truncation order of the Jacobi-Anger series for a given τ and ε."""

    tau: float = Field(ge=0)
    q: int = Field(ge=1)
    N: int = Field(ge=0)
    eps_target: float = Field(gt=0)
    eps_bound: float = Field(ge=0)
    q_lower: int = Field(default=0, ge=0)


class EigenphaseReport(BaseModel):
    """Comparison of walk eigenphases with ±arcsin(λ/X) + (1∓1)π/2."""

    n: int
    d: int
    X: float
    eigenvalues: list[float]
    predicted_phases: list[float] = Field(default_factory=list)
    max_deviation: float
    reconstruction_error: float  # max |T†ST − H/X|
    max_spectral_ratio: float  # max |λ|/X
    isometry_residual: float
    unitarity_residual: float
    swap_residual: float

    @property
    def bounds_ok(self) -> bool:
        return (
            self.max_deviation <= 1e-10
            and self.reconstruction_error <= 1e-12
            and self.max_spectral_ratio <= 1 + 1e-12
        )


class SimulationReport(BaseModel):
    """All diagnostics of one end-to-end simulation run."""

    tau: float
    t: float
    eps_target: float
    q: int
    N: int
    q_lower: int
    eps_bound: float
    gap_fourier: float
    trace_distance: float
    success_prob_min: float
    block_deviation: float = 0.0
    wall_time: float = 0.0
    synthesis: SynthesisDiagnostics | None = None
    phases: list[float] = Field(default_factory=list)

    @property
    def bounds_ok(self) -> bool:
        return (
            self.trace_distance <= 8 * self.eps_target
            and self.success_prob_min >= 1 - 16 * self.eps_target
        )


class TruncationRow(BaseModel):
    """One entry of the N(τ, ε) table."""

    tau: float
    eps: float
    q: int
    N: int
    q_lower: int
    eps_bound: float
    ratio: float  # q / max(τ, q_lower)
