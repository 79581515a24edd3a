"""CLI-level domain models."""

from qspsim.models.domain import (
    SWEEP_COLUMNS,
    CommandType,
    HamiltonianFile,
    RunConfig,
    SweepRow,
    TargetKind,
)

__all__ = [
    "SWEEP_COLUMNS",
    "CommandType",
    "HamiltonianFile",
    "RunConfig",
    "SweepRow",
    "TargetKind",
]
