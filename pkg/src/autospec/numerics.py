"""Numerical verification: eigenfunctions, finite sections and norm estimates."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import gammaln

from .config import DEFAULT_TOL
from .errors import (
    ConvergenceError,
    DomainError,
    NoConvergence,
    OverflowGuard,
    PairingError,
    PoleError,
)
from .mobius import DiskAutomorphism, evaluate
from .normalform import FormKind, NormalForm


# -- eigenfunction family ---------------------------------------------------

class FamilyKind(str, Enum):
    MONOMIAL = "monomial"
    EXP_CUSP = "expcusp"
    LOG_POWER = "logpower"


@dataclass(frozen=True)
class Eigenfunction:
    """``z^k``, ``exp(s (z+1)/(z-1))`` or ``((1+z)/(1-z))^(i t)`` (principal branch)."""

    kind: FamilyKind
    param: float

    def __post_init__(self):
        if not math.isfinite(self.param):
            raise DomainError("eigenfunction parameter must be finite")
        if self.kind is FamilyKind.MONOMIAL and (self.param < 1 or int(self.param) != self.param):
            raise DomainError("monomial degree must be an integer >= 1")
        if self.kind is FamilyKind.EXP_CUSP and self.param < 0:
            raise DomainError("cusp parameter s must be >= 0")

    def __call__(self, z):
        return eval_eigenfunction(self, z)


def Monomial(k: int) -> Eigenfunction:
    return Eigenfunction(FamilyKind.MONOMIAL, int(k))


def ExpCusp(s: float) -> Eigenfunction:
    return Eigenfunction(FamilyKind.EXP_CUSP, float(s))


def LogPower(t: float) -> Eigenfunction:
    return Eigenfunction(FamilyKind.LOG_POWER, float(t))


def _check_pole(z) -> None:
    if np.any(np.abs(1 - np.asarray(z)) < DEFAULT_TOL.pole):
        raise PoleError("eigenfunction evaluated at z = 1")


def _as_points(z):
    scalar = np.ndim(z) == 0
    return scalar, np.asarray(z, dtype=complex)


def eval_eigenfunction(f: Eigenfunction, z):
    scalar, z = _as_points(z)
    if f.kind is FamilyKind.MONOMIAL:
        out = z ** int(f.param)
    else:
        _check_pole(z)
        if f.kind is FamilyKind.EXP_CUSP:
            out = np.exp(f.param * (z + 1) / (z - 1))
        else:
            out = np.exp(1j * f.param * np.log((1 + z) / (1 - z)))
    return complex(out) if scalar else out


def eigenfunction_derivative(f: Eigenfunction, z):
    scalar, z = _as_points(z)
    if f.kind is FamilyKind.MONOMIAL:
        k = int(f.param)
        out = k * z ** (k - 1)
    else:
        _check_pole(z)
        val = eval_eigenfunction(f, z)
        if f.kind is FamilyKind.EXP_CUSP:
            out = val * (-2 * f.param) / (z - 1) ** 2
        else:
            out = val * 2j * f.param / ((1 - z) * (1 + z))
    return complex(out) if scalar else out


def predicted_eigenvalue(form: NormalForm, f: Eigenfunction) -> complex:
    """Eigenvalue of ``C_psi`` on ``f`` for the normal-form symbol ``psi``."""
    k = form.kind
    if k is FormKind.ROTATION and f.kind is FamilyKind.MONOMIAL:
        return cmath.exp(1j * cmath.phase(form.lam) * int(f.param))
    if k is FormKind.PARABOLIC_PLUS and f.kind is FamilyKind.EXP_CUSP:
        return cmath.exp(-2j * f.param)
    if k is FormKind.PARABOLIC_MINUS and f.kind is FamilyKind.EXP_CUSP:
        return cmath.exp(2j * f.param)
    if k is FormKind.HYPERBOLIC and f.kind is FamilyKind.LOG_POWER:
        # positive base (1+r)/(1-r) keeps the principal power unimodular
        r = form.r
        return cmath.exp(1j * f.param * math.log((1 + r) / (1 - r)))
    raise PairingError(f"{f.kind.value} is not an eigenfunction family for {k.value}")


# -- grids ------------------------------------------------------------------

@dataclass(frozen=True)
class GridSchedule:
    """Circles of radius ``1 - 2^-k`` for ``k = 1..depth``, plus the origin."""

    depth: int = 12
    angles_per_radius: int = 32
    include_origin: bool = True

    @property
    def radii(self) -> np.ndarray:
        return 1.0 - 2.0 ** -np.arange(1, self.depth + 1)

    def points(self) -> np.ndarray:
        theta = 2 * np.pi * np.arange(self.angles_per_radius) / self.angles_per_radius
        pts = (self.radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
        if self.include_origin:
            pts = np.concatenate([[0j], pts])
        return pts


def eigen_residual(phi: DiskAutomorphism, f: Eigenfunction, mu: complex, grid: GridSchedule) -> float:
    """``sup |f(phi(z)) - mu f(z)|`` over the grid."""
    z = grid.points()
    if z.size == 0:
        raise ValueError("empty grid")
    return float(np.max(np.abs(f(evaluate(phi, z)) - mu * f(z))))


def sup_norm_estimate(f: Eigenfunction, grid: GridSchedule) -> float:
    return float(np.max(np.abs(f(grid.points()))))


def bloch_seminorm_estimate(f: Eigenfunction, grid: GridSchedule) -> float:
    z = grid.points()
    return float(np.max((1 - np.abs(z) ** 2) * np.abs(eigenfunction_derivative(f, z))))


# -- power series and finite sections ---------------------------------------

@dataclass(frozen=True)
class PowerSeries:
    coeffs: np.ndarray

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)


def automorphism_series(phi: DiskAutomorphism, N: int) -> PowerSeries:
    """Taylor coefficients of ``phi`` at 0 up to ``z^N``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    lam, a = phi.lam, phi.a
    c = np.empty(N + 1, dtype=complex)
    c[0] = lam * a
    if N:
        c[1:] = -lam * (1 - abs(a) ** 2) * np.conj(a) ** np.arange(N)
    return PowerSeries(c)


def h2_weights(N: int) -> np.ndarray:
    return np.ones(N + 1)


def bergman_weights(N: int, alpha: float) -> np.ndarray:
    """``||z^k||^2`` in A^2_alpha with the probability measure ``(alpha+1)(1-|z|^2)^alpha dA``."""
    if alpha <= -1:
        raise DomainError("alpha must exceed -1")
    k = np.arange(N + 1)
    return np.exp(gammaln(k + 1) + gammaln(alpha + 2) - gammaln(k + alpha + 2))


@dataclass(frozen=True)
class TruncatedOperator:
    """``entries[i, j]`` is the coefficient of ``z^i`` in ``phi(z)^j``."""

    entries: np.ndarray
    weights: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.entries.shape[0] - 1

    def similarity_form(self) -> np.ndarray:
        """``D^{1/2} M D^{-1/2}``, whose spectral norm is the weighted operator norm."""
        s = np.sqrt(self.weights)
        return s[:, None] * self.entries / s[None, :]


def truncated_matrix(phi: DiskAutomorphism, N: int, weights=None) -> TruncatedOperator:
    if N < 1:
        raise ValueError("N must be at least 1")
    w = h2_weights(N) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (N + 1,) or np.any(w <= 0):
        raise ValueError("weights must be N+1 positive numbers")
    c = automorphism_series(phi, N).coeffs
    m = np.zeros((N + 1, N + 1), dtype=complex)
    col = np.zeros(N + 1, dtype=complex)
    col[0] = 1
    m[:, 0] = col
    for j in range(1, N + 1):
        col = np.convolve(col, c)[: N + 1]
        m[:, j] = col
    return TruncatedOperator(m, w)


def truncation_eigenvalues(T: TruncatedOperator) -> np.ndarray:
    if T.N + 1 > 512:
        raise ValueError("finite section too large (N + 1 > 512)")
    try:
        return np.linalg.eigvals(T.entries)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc


@dataclass(frozen=True)
class RadiusEstimate:
    estimate: float
    sequence: np.ndarray   # ||M^n||^(1/n) for n = 1..n_powers


def spectral_radius_estimate(T: TruncatedOperator, n_powers: int) -> RadiusEstimate:
    """Gelfand-type estimate ``||M^n||^(1/n)`` in the weighted coefficient norm.

    Powers are accumulated one factor at a time with the running product
    rescaled to unit norm and the log-scale carried separately.
    """
    if n_powers < 1:
        raise ValueError("n_powers must be at least 1")
    b = T.similarity_form()
    p = np.eye(b.shape[0], dtype=complex)
    log_scale = 0.0
    seq = np.empty(n_powers)
    for n in range(1, n_powers + 1):
        p = p @ b
        nrm = np.linalg.norm(p, 2)
        if not np.isfinite(nrm) or nrm > 1e300:
            raise OverflowGuard(f"power {n} overflowed")
        if nrm == 0:
            seq[n - 1:] = 0.0
            break
        log_scale += math.log(nrm)
        p /= nrm
        seq[n - 1] = math.exp(log_scale / n)
    return RadiusEstimate(float(seq[-1]), seq)


# -- little Bloch limits ----------------------------------------------------

def little_bloch_radial_limit(f: Eigenfunction, r_sequence=None, tol: float = 1e-6) -> float:
    """Limit of ``(1 - r^2)|f_t'(r)|`` as ``r -> 1`` along the radius."""
    if f.kind is not FamilyKind.LOG_POWER:
        raise DomainError("radial limit is defined for the log-power family")
    if f.param == 0:
        raise DomainError("t = 0 gives a constant function")
    r = 1.0 - 2.0 ** -np.arange(1, 41) if r_sequence is None else np.asarray(r_sequence, dtype=float)
    if r.size < 2 or np.any(np.diff(r) <= 0) or np.any(r >= 1):
        raise ValueError("r_sequence must increase towards 1")
    vals = (1 - r) * (1 + r) * np.abs(eigenfunction_derivative(f, r.astype(complex)))
    if abs(vals[-1] - vals[-2]) >= tol:
        raise NoConvergence(f"radial tail not Cauchy: {vals[-2]!r}, {vals[-1]!r}")
    return float(vals[-1])


def little_bloch_sequence_terms(s: float, x0: float, n) -> np.ndarray:
    """``(1 - |z_n|^2)|f_s'(z_n)|`` along ``z_n = (x0 + i n + 1)/(x0 + i n - 1)``.

    ``z_n`` solves ``(z+1)/(z-1) = w_n`` with ``w_n = x0 + i n``, so every factor is
    written through ``w_n``; forming ``1 - |z_n|^2`` from ``z_n`` itself loses
    all precision once ``n`` is large.
    """
    w = x0 + 1j * np.asarray(n, dtype=float)
    one_minus_mod2 = -4 * x0 / np.abs(w - 1) ** 2
    one_minus_z = -2 / (w - 1)
    deriv_mod = np.abs(np.exp(s * w)) * 2 * s / np.abs(one_minus_z) ** 2
    return one_minus_mod2 * deriv_mod


def little_bloch_sequence_limit(s: float, x0: float, n_max: int = 10**6) -> float:
    if s <= 0:
        raise DomainError("s must be positive")
    if x0 >= 0:
        raise DomainError("x0 must be negative")
    if n_max < 10:
        raise ValueError("n_max must be at least 10")
    return float(little_bloch_sequence_terms(s, x0, n_max))
