"""Real trigonometric polynomials and Laurent-polynomial root finding.

A ``TrigSeries`` holds f(θ) = Σ_k a_k cos(kθ) + Σ_k c_k sin(kθ) for
k ≤ K (the half-degree). A ``LaurentPoly`` holds Σ_k b_k w^k with
w = e^{iθ}, or w = e^{iθ/2} when ``half_angle`` is set.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qspsim.numerics.base import COEFF_TRIM_TOL, ZeroPolynomialError

logger = logging.getLogger(__name__)

PhaseFunction = Callable[[np.ndarray], np.ndarray]

MIN_GRID_SIZE = 1024
GRID_OVERSAMPLING = 8


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype).reshape(-1)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TrigSeries:
    """Real Fourier series with cosine coefficients a_0..a_K and sine coefficients c_1..c_K."""

    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    # numpy scalars on the left defer to __rmul__/__radd__
    __array_ufunc__ = None

    def __post_init__(self):
        cos = np.asarray(self.cos_coeffs, dtype=float).reshape(-1)
        sin = np.asarray(self.sin_coeffs, dtype=float).reshape(-1)
        if cos.size == 0:
            cos = np.zeros(1)
        if not (np.all(np.isfinite(cos)) and np.all(np.isfinite(sin))):
            raise ValueError("TrigSeries coefficients must be finite")
        half_degree = max(cos.size - 1, sin.size)
        cos = np.pad(cos, (0, half_degree + 1 - cos.size))
        sin = np.pad(sin, (0, half_degree - sin.size))
        object.__setattr__(self, "cos_coeffs", _frozen_array(cos, float))
        object.__setattr__(self, "sin_coeffs", _frozen_array(sin, float))

    @classmethod
    def from_coeffs(
        cls,
        cos: dict[int, float] | None = None,
        sin: dict[int, float] | None = None,
        half_degree: int = 0,
    ) -> "TrigSeries":
        """Build a series from sparse {k: value} maps.

        Args:
            cos: Cosine coefficients keyed by k ≥ 0
            sin: Sine coefficients keyed by k ≥ 1
            half_degree: Minimum half-degree of the result

        Returns:
            The series, padded with zeros up to its half-degree
        """
        cos = cos or {}
        sin = sin or {}
        if any(k < 0 for k in cos) or any(k < 1 for k in sin):
            raise ValueError("cosine keys must be >= 0 and sine keys >= 1")
        degree = max([half_degree, *cos.keys(), *sin.keys()])
        cos_coeffs = np.zeros(degree + 1)
        sin_coeffs = np.zeros(degree)
        for k, value in cos.items():
            cos_coeffs[k] = value
        for k, value in sin.items():
            sin_coeffs[k - 1] = value
        return cls(cos_coeffs, sin_coeffs)

    @classmethod
    def constant(cls, value: float, half_degree: int = 0) -> "TrigSeries":
        return cls.from_coeffs(cos={0: value}, half_degree=half_degree)

    @property
    def half_degree(self) -> int:
        return self.cos_coeffs.size - 1

    def __call__(self, theta):
        return eval_series(self, theta)

    def padded(self, half_degree: int) -> "TrigSeries":
        """Return the same series declared at a larger half-degree."""
        if half_degree < self.half_degree:
            raise ValueError("cannot pad to a smaller half-degree")
        return TrigSeries(
            np.pad(self.cos_coeffs, (0, half_degree - self.half_degree)),
            np.pad(self.sin_coeffs, (0, half_degree - self.half_degree)),
        )

    def effective_degree(self, tol: float = COEFF_TRIM_TOL) -> int:
        """Largest k carrying a coefficient above ``tol`` (0 for constants)."""
        magnitudes = np.abs(self.cos_coeffs)
        magnitudes[1:] = np.maximum(magnitudes[1:], np.abs(self.sin_coeffs))
        nonzero = np.nonzero(magnitudes > tol)[0]
        return int(nonzero[-1]) if nonzero.size else 0

    def is_cosine_type(self, tol: float = COEFF_TRIM_TOL) -> bool:
        return bool(np.all(np.abs(self.sin_coeffs) <= tol))

    def is_sine_type(self, tol: float = COEFF_TRIM_TOL) -> bool:
        return bool(np.all(np.abs(self.cos_coeffs) <= tol))

    def to_laurent(self) -> "LaurentPoly":
        """Convert to Σ b_k e^{ikθ} with exponents in [−K, K]."""
        K = self.half_degree
        coeffs = np.zeros(2 * K + 1, dtype=complex)
        coeffs[K] = self.cos_coeffs[0]
        a = self.cos_coeffs[1:]
        c = self.sin_coeffs
        coeffs[K + 1 :] = (a - 1j * c) / 2
        coeffs[:K] = ((a + 1j * c) / 2)[::-1]
        return LaurentPoly(coeffs, low=-K)

    def _binary(self, other: "TrigSeries", op) -> "TrigSeries":
        K = max(self.half_degree, other.half_degree)
        left, right = self.padded(K), other.padded(K)
        return TrigSeries(
            op(left.cos_coeffs, right.cos_coeffs), op(left.sin_coeffs, right.sin_coeffs)
        )

    def __add__(self, other):
        if isinstance(other, TrigSeries):
            return self._binary(other, np.add)
        if np.isscalar(other):
            cos = self.cos_coeffs.copy()
            cos[0] += other
            return TrigSeries(cos, self.sin_coeffs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TrigSeries(-self.cos_coeffs, -self.sin_coeffs)

    def __sub__(self, other):
        if isinstance(other, TrigSeries):
            return self._binary(other, np.subtract)
        if np.isscalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TrigSeries):
            return multiply(self, other)
        if np.isscalar(other):
            return TrigSeries(self.cos_coeffs * other, self.sin_coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return TrigSeries(self.cos_coeffs / other, self.sin_coeffs / other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"TrigSeries(K={self.half_degree}, cos={self.cos_coeffs!r}, sin={self.sin_coeffs!r})"


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Σ b_k w^k for k in [low, low + len(coeffs) − 1].

    With ``half_angle`` set, w = e^{iθ/2}; otherwise w = e^{iθ}.
    """

    coeffs: np.ndarray
    low: int = 0
    half_angle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _frozen_array(self.coeffs, complex))

    @property
    def high(self) -> int:
        return self.low + self.coeffs.size - 1

    def at(self, w):
        """Evaluate at points ``w`` of the complex plane."""
        w = np.asarray(w, dtype=complex)
        exponents = np.arange(self.low, self.high + 1)
        return np.power.outer(w, exponents) @ self.coeffs

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        scale = 0.5 if self.half_angle else 1.0
        return self.at(np.exp(1j * scale * theta))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.half_angle != other.half_angle:
            raise ValueError("cannot multiply Laurent polynomials in different variables")
        return LaurentPoly(
            np.convolve(self.coeffs, other.coeffs), self.low + other.low, self.half_angle
        )

    def to_trig(self) -> TrigSeries:
        """Read the real series Σ a_k cos kθ + Σ c_k sin kθ off the coefficients.

        Imaginary parts that a real function would not produce are dropped.
        """
        if self.half_angle:
            raise ValueError("half-angle polynomials have no integer-frequency series")
        K = max(abs(self.low), abs(self.high))
        full = np.zeros(2 * K + 1, dtype=complex)
        full[self.low + K : self.high + K + 1] = self.coeffs
        positive, negative = full[K + 1 :], full[:K][::-1]
        cos = np.concatenate([[full[K].real], (positive + negative).real])
        sin = (1j * (positive - negative)).real
        return TrigSeries(cos, sin)


def eval_series(s: TrigSeries, theta):
    """Evaluate Σ a_k cos(kθ) + Σ c_k sin(kθ) at scalar or array θ."""
    theta_arr = np.asarray(theta, dtype=float)
    k = np.arange(s.half_degree + 1)
    angles = np.multiply.outer(theta_arr, k)
    value = np.cos(angles) @ s.cos_coeffs + np.sin(angles[..., 1:]) @ s.sin_coeffs
    return float(value) if theta_arr.ndim == 0 else value


def multiply(s1: TrigSeries, s2: TrigSeries) -> TrigSeries:
    """Pointwise product; the result has half-degree K1 + K2."""
    product = (s1.to_laurent() * s2.to_laurent()).to_trig()
    return product.padded(s1.half_degree + s2.half_degree)


def laurent_roots(p: LaurentPoly) -> np.ndarray:
    """All roots of w^{−low}·p(w) from balanced companion-matrix eigenvalues.

    Leading coefficients below 1e-14 of the largest one are dropped first;
    negligible trailing coefficients become exact roots at zero.

    Raises:
        ZeroPolynomialError: If every coefficient is zero
    """
    coeffs = np.asarray(p.coeffs, dtype=complex)
    scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    if scale == 0.0:
        raise ZeroPolynomialError("zero polynomial")

    significant = np.nonzero(np.abs(coeffs) > COEFF_TRIM_TOL * scale)[0]
    first, last = int(significant[0]), int(significant[-1])
    poly = coeffs[first : last + 1]
    degree = poly.size - 1
    zeros = np.zeros(first, dtype=complex)
    if degree == 0:
        return zeros

    companion = np.zeros((degree, degree), dtype=complex)
    companion[1:, :-1] = np.eye(degree - 1)
    companion[:, -1] = -poly[:-1] / poly[-1]
    balanced, _ = scipy.linalg.matrix_balance(companion)
    roots = scipy.linalg.eigvals(balanced)
    logger.debug(f"Found {degree} roots (+{first} at zero) for Laurent degree {p.low}..{p.high}")
    return np.concatenate([roots, zeros])


def theta_grid(grid_size: int) -> np.ndarray:
    """Uniform grid of ``grid_size`` points on [−π, π)."""
    return -np.pi + 2 * np.pi * np.arange(grid_size) / grid_size


def default_grid_size(half_degree: int) -> int:
    return max(MIN_GRID_SIZE, GRID_OVERSAMPLING * half_degree)


def sup_norm_gap(
    a: TrigSeries,
    c: TrigSeries,
    h: PhaseFunction,
    grid_size: int | None = None,
) -> float:
    """Grid estimate of max_θ |A(θ) + iC(θ) − e^{ih(θ)}|.

    The grid maximum is a lower estimate of the true sup norm; the
    refinement factor (grid points per unit of half-degree) is logged.
    """
    K = max(a.half_degree, c.half_degree)
    grid_size = grid_size or default_grid_size(K)
    if grid_size < 4 * (K + 1):
        raise ValueError(f"grid of {grid_size} points does not resolve half-degree {K}")
    theta = theta_grid(grid_size)
    values = eval_series(a, theta) + 1j * eval_series(c, theta)
    gap = float(np.max(np.abs(values - np.exp(1j * np.asarray(h(theta))))))
    logger.debug(f"Sup-norm gap {gap:.3e} on {grid_size} points (refinement {grid_size / (K + 1):.1f})")
    return gap


def fourier_target(h: PhaseFunction, half_degree: int) -> tuple[TrigSeries, TrigSeries]:
    """Truncated Fourier pair (A, C) with A ≈ cos h and C ≈ sin h.

    A keeps only the cosine part of cos h and C only the sine part of sin h,
    which is the exact truncation whenever h is odd.
    """
    samples = max(64, GRID_OVERSAMPLING * (half_degree + 1))
    theta = 2 * np.pi * np.arange(samples) / samples
    phase = np.asarray(h(theta), dtype=float)
    cos_spectrum = np.fft.fft(np.cos(phase)) / samples
    sin_spectrum = np.fft.fft(np.sin(phase)) / samples

    k = np.arange(1, half_degree + 1)
    cos = np.concatenate([[cos_spectrum[0].real], 2 * cos_spectrum[k].real])
    sin = -2 * sin_spectrum[k].imag
    return TrigSeries(cos, np.zeros(half_degree)), TrigSeries(np.zeros(half_degree + 1), sin)
