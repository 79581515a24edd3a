"""Shared tolerances and the exception hierarchy for the numerics package."""

# Tolerances
UNITARY_TOL = 1e-12
ACHIEVABILITY_TOL = 1e-10
COMPLETION_TOL = 1e-8
COMPLETION_FAIL_TOL = 1e-6
STRIPPING_TOL = 1e-6
EIGENPHASE_MATCH_TOL = 1e-6
HERMITIAN_TOL = 1e-12
COEFF_TRIM_TOL = 1e-14
UNIT_CIRCLE_TOL = 1e-5  # eigvals splits double roots on the circle by up to a few 1e-6
PRESHRINK_ETA = 1e-12
ROUNDOFF_FLOOR = 1e-12


# Exception Hierarchy
class QSPError(Exception):
    """Base exception for all qspsim errors."""

    pass


class ZeroPolynomialError(QSPError):
    """Polynomial is identically zero."""

    pass


class UnsupportedParityError(QSPError):
    """Sequence length or series type is outside the even-N scope."""

    pass


class IllConditionedCompletionError(QSPError):
    """Sum-of-squares completion left a residual above tolerance."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"ill-conditioned completion: residual {residual:.3e}")


class StrippingStalledError(QSPError):
    """Leading coefficient failed the rank test during layer stripping."""

    def __init__(self, degree: int, residual: float):
        self.degree = degree
        self.residual = residual
        super().__init__(f"stripping stalled at degree {degree}: residual {residual:.3e}")


class TargetNotCloseError(QSPError):
    """Input series is not eps-close to the requested target."""

    def __init__(self, gap: float, eps: float):
        self.gap = gap
        self.eps = eps
        super().__init__(f"target not eps-close: gap {gap:.3e} > eps {eps:.3e}")


class NotHermitianError(QSPError):
    """Matrix entries are not Hermitian."""

    pass


class SparsityExceededError(QSPError):
    """A row has more nonzeros than the declared sparsity."""

    pass


class ZeroHamiltonianError(QSPError):
    """Hamiltonian has no nonzero entries."""

    pass


class UnmatchedEigenphaseError(QSPError):
    """A predicted walk eigenphase has no counterpart in the walk spectrum."""

    pass


class NCapExceededError(QSPError):
    """Requested sequence length exceeds the supported cap."""

    def __init__(self, required_n: int, cap: int):
        self.required_n = required_n
        self.cap = cap
        super().__init__(f"N cap exceeded: required N={required_n} > cap {cap}")


class DimensionMismatchError(QSPError):
    """Operands have incompatible dimensions."""

    pass


class HamiltonianParseError(QSPError):
    """Hamiltonian input could not be parsed."""

    pass
