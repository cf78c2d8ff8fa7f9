"""Spectrum predictions for composition operators with automorphic symbol.

On the target family of spaces (bounded analytic functions, Bloch, BMOA and
anything else that contains the eigenfunction family and has unit spectral
radius for automorphic symbols) the spectrum is

* the closure of the powers of ``phi'(a)`` for elliptic ``phi``: a finite
  cyclic group when ``phi'(a)`` is a root of unity, the unit circle otherwise;
* the unit circle for parabolic and hyperbolic ``phi``.

Hardy, weighted Bergman, weighted Banach and Dirichlet spaces are supported
for comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DomainError, SingularResolvent, WrongKind
from .mobius import Classification, Elliptic, Hyperbolic, Parabolic


# -- spaces -----------------------------------------------------------------

class SpaceKind(str, Enum):
    X_FAMILY = "X"
    HARDY = "hardy"
    BERGMAN = "bergman"
    WEIGHTED_BANACH = "wbanach"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: SpaceKind
    p: float | None = None
    alpha: float | None = None

    def __post_init__(self):
        k = self.kind
        if k is SpaceKind.HARDY and not (self.p is not None and self.p >= 1):
            raise DomainError("Hardy space needs p >= 1")
        if k is SpaceKind.BERGMAN:
            if self.p is None or self.p < 1 or self.alpha is None or self.alpha <= -1:
                raise DomainError("Bergman space needs p >= 1 and alpha > -1")
        if k is SpaceKind.WEIGHTED_BANACH and not (self.p is not None and self.p > 0):
            raise DomainError("weighted Banach space needs p > 0")

    @property
    def bergman_exponent(self) -> float:
        """``s = (alpha + 2)/p``."""
        return (self.alpha + 2) / self.p

    def label(self) -> str:
        if self.kind is SpaceKind.HARDY:
            return f"hardy:{self.p:g}"
        if self.kind is SpaceKind.BERGMAN:
            return f"bergman:{self.p:g}:{self.alpha:g}"
        if self.kind is SpaceKind.WEIGHTED_BANACH:
            return f"wbanach:{self.p:g}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "SpaceDescriptor":
        """Parse ``X``, ``hardy:<p>``, ``bergman:<p>:<alpha>``, ``wbanach:<p>`` or ``dirichlet``."""
        head, *rest = text.strip().split(":")
        try:
            if head == "X" and not rest:
                return cls(SpaceKind.X_FAMILY)
            if head == "dirichlet" and not rest:
                return cls(SpaceKind.DIRICHLET)
            if head == "hardy" and len(rest) == 1:
                return cls(SpaceKind.HARDY, p=float(rest[0]))
            if head == "bergman" and len(rest) == 2:
                return cls(SpaceKind.BERGMAN, p=float(rest[0]), alpha=float(rest[1]))
            if head == "wbanach" and len(rest) == 1:
                return cls(SpaceKind.WEIGHTED_BANACH, p=float(rest[0]))
        except ValueError as exc:
            raise DomainError(f"bad space parameters in {text!r}") from exc
        raise DomainError(f"unknown space {text!r}")


X_FAMILY = SpaceDescriptor(SpaceKind.X_FAMILY)


# -- predictions ------------------------------------------------------------

class PredictionKind(str, Enum):
    UNIT_CIRCLE = "unit_circle"
    FINITE_CYCLIC_GROUP = "finite_cyclic_group"
    ANNULUS = "annulus"
    ANNULUS_LOWER_BOUND = "annulus_lower_bound"   # spectrum contains the annulus


@dataclass(frozen=True)
class SpectrumPrediction:
    kind: PredictionKind
    lam: complex | None = None
    order: int | None = None
    r_in: float | None = None
    r_out: float | None = None

    def elements(self) -> list[complex]:
        """Group elements, ``lam^k`` for ``k = 0..order-1``.

        A cyclic subgroup of the circle of order m is the set of m-th roots of
        unity, so the elements are produced as ``exp(2 pi i k/m)`` ordered by
        the power of ``lam`` they equal; this keeps them exactly unimodular.
        """
        if self.kind is not PredictionKind.FINITE_CYCLIC_GROUP:
            raise WrongKind("only finite cyclic groups have a finite element list")
        m = self.order
        step = round(cmath.phase(self.lam) / (2 * math.pi) * m) % m
        return [cmath.exp(2j * math.pi * ((k * step) % m) / m) for k in range(m)]

    def sample(self, n: int = 360) -> np.ndarray:
        """Point cloud for plotting: ``n`` points, split across both circles of an annulus."""
        if self.kind is PredictionKind.FINITE_CYCLIC_GROUP:
            return np.array(self.elements())
        def ring(count):
            return np.exp(2j * np.pi * np.arange(count) / count)

        if self.kind is PredictionKind.UNIT_CIRCLE:
            return ring(n)
        half = n // 2
        return np.concatenate([self.r_in * ring(half), self.r_out * ring(n - half)])


def unit_circle() -> SpectrumPrediction:
    return SpectrumPrediction(PredictionKind.UNIT_CIRCLE)


# -- rotation order ---------------------------------------------------------

@dataclass(frozen=True)
class RotationOrder:
    order: int | None           # None means infinite
    exact: bool

    @property
    def infinite(self) -> bool:
        return self.order is None

    @property
    def exactness(self) -> str:
        return "exact_rational" if self.exact else "numeric_detection"


def rotation_order(
    lam: complex | Fraction, tol: float = DEFAULT_TOL.order, m_max: int = 10_000
) -> RotationOrder:
    """Order of a unimodular number in the circle group.

    Pass a :class:`fractions.Fraction` ``num/den`` to mean ``exp(2 pi i num/den)``
    exactly; the order is then the reduced denominator.  A complex input is
    scanned for the smallest ``m <= m_max`` with ``|lam^m - 1| < tol``.
    """
    if isinstance(lam, Fraction):
        return RotationOrder(lam.denominator, True)
    lam = complex(lam)
    if abs(abs(lam) - 1) > DEFAULT_TOL.boundary:
        raise DomainError(f"|lambda| = {abs(lam)!r} is not 1")
    if m_max < 1:
        raise ValueError("m_max must be positive")
    theta = cmath.phase(lam)
    m = np.arange(1, m_max + 1)
    hits = np.nonzero(np.abs(np.exp(1j * theta * m) - 1) < tol)[0]
    if hits.size == 0:
        return RotationOrder(None, False)
    return RotationOrder(int(m[hits[0]]), False)


def _elliptic_prediction(cls: Elliptic, angle: Fraction | None, tol: float, m_max: int) -> SpectrumPrediction:
    lam = cls.multiplier / abs(cls.multiplier)
    order = rotation_order(angle if angle is not None else lam, tol, m_max)
    if order.infinite:
        return unit_circle()
    if angle is not None:
        lam = cmath.exp(2j * math.pi * angle.numerator / angle.denominator)
    return SpectrumPrediction(PredictionKind.FINITE_CYCLIC_GROUP, lam=lam, order=order.order)


def predict_spectrum(
    cls: Classification,
    space: SpaceDescriptor = X_FAMILY,
    *,
    angle: Fraction | None = None,
    tol: float = DEFAULT_TOL.order,
    m_max: int = 10_000,
) -> SpectrumPrediction:
    """Predicted spectrum of ``C_phi`` on ``space``.

    ``angle``, when given for an elliptic symbol, is the exact multiplier
    angle as a fraction of a full turn and switches order detection to exact
    mode.
    """
    if isinstance(cls, Elliptic):
        return _elliptic_prediction(cls, angle, tol, m_max)
    if angle is not None:
        raise WrongKind("an exact multiplier angle only makes sense for elliptic symbols")
    if isinstance(cls, Parabolic):
        return unit_circle()
    if not isinstance(cls, Hyperbolic):
        raise WrongKind(f"not a classification: {cls!r}")

    d = cls.multiplier
    k = space.kind
    if k in (SpaceKind.X_FAMILY, SpaceKind.DIRICHLET):
        return unit_circle()
    if k is SpaceKind.HARDY:
        return SpectrumPrediction(PredictionKind.ANNULUS, r_in=d ** (1 / space.p), r_out=d ** (-1 / space.p))
    expo = space.bergman_exponent if k is SpaceKind.BERGMAN else space.p
    # phi'(b) = 1/phi'(a) at the two boundary fixed points
    ends = sorted((d ** -expo, cls.repelling_multiplier ** -expo))
    return SpectrumPrediction(PredictionKind.ANNULUS_LOWER_BOUND, r_in=ends[0], r_out=ends[1])


def hardy_spectral_radius(cls: Hyperbolic, p: float) -> float:
    """``phi'(a)^(-1/p)`` with ``a`` the attracting (Denjoy-Wolff) point."""
    if not isinstance(cls, Hyperbolic):
        raise WrongKind("Hardy spectral radius formula is for hyperbolic symbols")
    if p < 1:
        raise DomainError("p must be at least 1")
    return cls.multiplier ** (-1.0 / p)


def spectrum_contains(prediction: SpectrumPrediction, mu: complex, tol: float) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    mod = abs(mu)
    k = prediction.kind
    if k is PredictionKind.UNIT_CIRCLE:
        return abs(mod - 1) <= tol
    if k is PredictionKind.FINITE_CYCLIC_GROUP:
        return min(abs(mu - g) for g in prediction.elements()) <= tol
    return prediction.r_in - tol <= mod <= prediction.r_out + tol


# -- finite-order resolvent -------------------------------------------------

def resolvent_matrix(mu: complex, m: int) -> np.ndarray:
    """The m x m cyclic system: ``-mu`` on the diagonal, ones on the cyclic superdiagonal."""
    if m < 1:
        raise ValueError("m must be positive")
    a = -mu * np.eye(m, dtype=complex)
    a[np.arange(m), (np.arange(m) + 1) % m] += 1
    return a


def resolvent_determinant(mu: complex, m: int) -> complex:
    if m < 1:
        raise ValueError("m must be positive")
    return (-1) ** m * (complex(mu) ** m - 1)


def elliptic_resolvent_solve(
    m: int,
    lam: complex,
    mu: complex,
    g: Callable[[np.ndarray], np.ndarray],
    z: np.ndarray,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """Solve ``f(lam z) - mu f(z) = g(z)`` for ``lam`` of order ``m``; returns ``f`` on ``z``.

    Uses ``f = (1 - mu^m)^-1 sum_j mu^(m-1-j) g(lam^j z)`` and checks the
    identity on the grid before returning.
    """
    lam, mu = complex(lam), complex(mu)
    if abs(lam**m - 1) > tol.order:
        raise DomainError(f"lambda is not an m-th root of unity (m = {m})")
    denom = 1 - mu**m
    if abs(denom) <= tol.order:
        raise SingularResolvent(f"mu^m = 1 for mu = {mu!r}, m = {m}")
    z = np.asarray(z, dtype=complex)

    def f(points):
        acc = np.zeros_like(points)
        for j in range(m):
            acc = acc + mu ** (m - 1 - j) * g(lam**j * points)
        return acc / denom

    values = f(z)
    gz = g(z)
    scale = max(1.0, float(np.max(np.abs(gz))) if gz.size else 1.0)
    res = float(np.max(np.abs(f(lam * z) - mu * values - gz))) if z.size else 0.0
    if res >= tol.resolvent * scale:
        raise SingularResolvent(f"resolvent residual {res:.3e} exceeds tolerance")
    return values
