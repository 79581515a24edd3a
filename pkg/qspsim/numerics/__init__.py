"""Numerical core: trigonometric polynomials, phase synthesis, walks and simulation."""

from qspsim.numerics.base import (
    DimensionMismatchError,
    HamiltonianParseError,
    IllConditionedCompletionError,
    NCapExceededError,
    NotHermitianError,
    QSPError,
    SparsityExceededError,
    StrippingStalledError,
    TargetNotCloseError,
    UnmatchedEigenphaseError,
    UnsupportedParityError,
    ZeroHamiltonianError,
    ZeroPolynomialError,
)
from qspsim.numerics.jacobi_anger import (
    bessel_j,
    choose_truncation,
    evolution_phase,
    lower_bound_q,
    target_series,
    truncation_bound,
    truncation_table,
)
from qspsim.numerics.models import (
    AchievabilityReport,
    EigenphaseReport,
    PhaseSequence,
    SimulationReport,
    SynthesisDiagnostics,
    TruncationPlan,
    TruncationRow,
)
from qspsim.numerics.phasefind import (
    anchor_correct,
    complete,
    layer_strip,
    refine_phases,
    rescale,
    synthesize,
    validate_achievable,
)
from qspsim.numerics.qsp_engine import (
    build_u_phi,
    build_v,
    exact_evolution,
    operator_distance,
    project_plus,
    simulate,
)
from qspsim.numerics.su2_response import ResponseABCD, response_eval, response_series, rot_matrix
from qspsim.numerics.trigpoly import (
    LaurentPoly,
    TrigSeries,
    eval_series,
    fourier_target,
    laurent_roots,
    multiply,
    sup_norm_gap,
)
from qspsim.numerics.walk import (
    SparseHamiltonian,
    WalkOperator,
    build_walk,
    eigenphase_check,
    from_entries,
    oracle_f,
    oracle_h,
)

__all__ = [
    "AchievabilityReport",
    "DimensionMismatchError",
    "EigenphaseReport",
    "HamiltonianParseError",
    "IllConditionedCompletionError",
    "LaurentPoly",
    "NCapExceededError",
    "NotHermitianError",
    "PhaseSequence",
    "QSPError",
    "ResponseABCD",
    "SimulationReport",
    "SparseHamiltonian",
    "SparsityExceededError",
    "StrippingStalledError",
    "SynthesisDiagnostics",
    "TargetNotCloseError",
    "TrigSeries",
    "TruncationPlan",
    "TruncationRow",
    "UnmatchedEigenphaseError",
    "UnsupportedParityError",
    "WalkOperator",
    "ZeroHamiltonianError",
    "ZeroPolynomialError",
    "anchor_correct",
    "bessel_j",
    "build_u_phi",
    "build_v",
    "build_walk",
    "choose_truncation",
    "complete",
    "eigenphase_check",
    "eval_series",
    "evolution_phase",
    "exact_evolution",
    "fourier_target",
    "from_entries",
    "laurent_roots",
    "layer_strip",
    "lower_bound_q",
    "multiply",
    "operator_distance",
    "oracle_f",
    "oracle_h",
    "project_plus",
    "refine_phases",
    "rescale",
    "response_eval",
    "response_series",
    "rot_matrix",
    "simulate",
    "sup_norm_gap",
    "synthesize",
    "target_series",
    "truncation_bound",
    "truncation_table",
    "validate_achievable",
]
