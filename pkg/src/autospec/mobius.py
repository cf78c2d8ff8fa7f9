"""Automorphisms of the unit disk.

Every automorphism is stored in the canonical form

    phi(z) = lam * (a - z) / (1 - conj(a) * z),    |lam| = 1, |a| < 1,

so the identity is ``lam = -1, a = 0``.  The matching 2x2 matrix is
``[[-lam, lam*a], [-conj(a), 1]]``; composition is the matrix product.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Union

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DomainError, IdentityError, NumericallyAmbiguous, PoleError


@dataclass(frozen=True)
class DiskAutomorphism:
    lam: complex
    a: complex

    def __post_init__(self):
        lam, a = complex(self.lam), complex(self.a)
        if not (cmath.isfinite(lam) and cmath.isfinite(a)):
            raise DomainError("automorphism parameters must be finite")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)

    def __call__(self, z):
        return evaluate(self, z)

    def matrix(self) -> np.ndarray:
        lam, a = self.lam, self.a
        return np.array([[-lam, lam * a], [-a.conjugate(), 1.0]], dtype=complex)

    def __repr__(self) -> str:
        return f"DiskAutomorphism(lam={self.lam!r}, a={self.a!r})"


def make_automorphism(lam: complex, a: complex, tol: Tolerances = DEFAULT_TOL) -> DiskAutomorphism:
    """Build ``lam*(a - z)/(1 - conj(a) z)``; ``lam`` is renormalized onto the unit circle."""
    lam, a = complex(lam), complex(a)
    if not (cmath.isfinite(lam) and cmath.isfinite(a)):
        raise DomainError("parameters must be finite")
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    if abs(a) >= 1:
        raise DomainError(f"|a| = {abs(a)!r} is not inside the unit disk")
    lam = lam / abs(lam)
    if abs(abs(lam) - 1.0) > tol.unimodular:
        raise DomainError("lambda could not be normalized to modulus one")
    return DiskAutomorphism(lam, a)


IDENTITY = DiskAutomorphism(-1.0, 0.0)


def rotation(nu: complex) -> DiskAutomorphism:
    """The map ``z -> nu*z`` (multiplier ``nu`` at the origin)."""
    return make_automorphism(-complex(nu), 0.0)


def from_matrix(m, tol: Tolerances = DEFAULT_TOL) -> DiskAutomorphism:
    """Canonical automorphism for ``z -> (A z + B)/(C z + D)``."""
    (A, B), (C, D) = np.asarray(m, dtype=complex)
    if D == 0:
        raise DomainError("matrix does not fix the disk (D = 0)")
    a = -(C / D).conjugate()
    lam = -A / D
    if abs(a) >= 1:
        raise DomainError("matrix does not preserve the unit disk")
    return make_automorphism(lam, a, tol)


def evaluate(phi: DiskAutomorphism, z, tol: Tolerances = DEFAULT_TOL):
    """Value of ``phi`` at ``z`` (scalar or array); boundary points are allowed."""
    lam, a = phi.lam, phi.a
    if np.ndim(z) == 0:
        z = complex(z)
        den = 1 - a.conjugate() * z
        if abs(den) < tol.pole:
            raise PoleError(f"pole of the automorphism at z = {z!r}")
        return lam * (a - z) / den
    z = np.asarray(z, dtype=complex)
    den = 1 - np.conj(a) * z
    if np.any(np.abs(den) < tol.pole):
        raise PoleError("grid contains a pole of the automorphism")
    return lam * (a - z) / den


def derivative(phi: DiskAutomorphism, z, tol: Tolerances = DEFAULT_TOL):
    lam, a = phi.lam, phi.a
    scalar = np.ndim(z) == 0
    z = complex(z) if scalar else np.asarray(z, dtype=complex)
    den = 1 - a.conjugate() * z
    if np.any(np.abs(den) < tol.pole):
        raise PoleError("derivative evaluated at a pole")
    return lam * (abs(a) ** 2 - 1) / den**2


def compose(f: DiskAutomorphism, g: DiskAutomorphism, tol: Tolerances = DEFAULT_TOL) -> DiskAutomorphism:
    """``f o g``, i.e. ``z -> f(g(z))``."""
    return from_matrix(f.matrix() @ g.matrix(), tol)


def inverse(phi: DiskAutomorphism) -> DiskAutomorphism:
    # w = lam(a - z)/(1 - conj(a) z)  solves to  z = conj(lam) (lam a - w)/(1 - conj(lam a) w)
    lam = phi.lam.conjugate()
    return make_automorphism(lam, phi.lam * phi.a)


def conjugate_by(phi: DiskAutomorphism, tau: DiskAutomorphism) -> DiskAutomorphism:
    """``tau o phi o tau^{-1}``."""
    return compose(tau, compose(phi, inverse(tau)))


def is_identity(phi: DiskAutomorphism, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(phi.lam + 1) <= tol.identity and abs(phi.a) <= tol.identity


# -- fixed points -----------------------------------------------------------

class _Infinity:
    """Projective point at infinity; rotations about the origin fix it."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()
ProjectivePoint = Union[complex, _Infinity]


@dataclass(frozen=True)
class FixedPoints:
    points: tuple[ProjectivePoint, ProjectivePoint]
    multiplicity_two: bool = False

    @property
    def finite(self) -> list[complex]:
        return [p for p in self.points if p is not INFINITY]


def _quadratic_roots(phi: DiskAutomorphism) -> tuple[complex, complex] | None:
    """Roots of conj(a) z^2 - (1 + lam) z + lam a = 0, or None when a == 0."""
    lam, a = phi.lam, phi.a
    A, B, C = a.conjugate(), -(1 + lam), lam * a
    if A == 0:
        return None
    # disc = lam * (|1+lam|^2 - 4|a|^2), factored to avoid cancellation
    half = abs(1 + lam) / 2
    disc = 4 * lam * (half - abs(a)) * (half + abs(a))
    sq = cmath.sqrt(disc)
    if (B.conjugate() * sq).real > 0:
        q = -(B + sq) / 2
    else:
        q = -(B - sq) / 2
    try:
        far = q / A
    except OverflowError:
        far = complex("inf")
    if not cmath.isfinite(far) or max(abs(far.real), abs(far.imag)) > 1e300:
        far = complex("inf")
    return far, C / q


def fixed_points(phi: DiskAutomorphism, tol: Tolerances = DEFAULT_TOL) -> FixedPoints:
    kind, roots = _decide(phi, tol)
    if roots is None:
        return FixedPoints((0j, INFINITY), False)
    if kind is Kind.PARABOLIC:
        p = _parabolic_point(phi)
        return FixedPoints((p, p), True)
    # a tiny |a| pushes the exterior root past the float range
    return FixedPoints(tuple(r if cmath.isfinite(r) else INFINITY for r in roots), False)


# -- classification ---------------------------------------------------------

class Kind(str, Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Elliptic:
    interior_fixed_point: complex
    multiplier: complex
    kind: ClassVar[Kind] = Kind.ELLIPTIC


@dataclass(frozen=True)
class Parabolic:
    boundary_fixed_point: complex
    translation_sign: int
    kind: ClassVar[Kind] = Kind.PARABOLIC


@dataclass(frozen=True)
class Hyperbolic:
    attracting_point: complex
    repelling_point: complex
    multiplier: float
    repelling_multiplier: float
    kind: ClassVar[Kind] = Kind.HYPERBOLIC


Classification = Union[Elliptic, Parabolic, Hyperbolic]


def trace_gap(phi: DiskAutomorphism) -> float:
    """``|tr|^2/|det| - 4`` for the normalized matrix: <0 elliptic, 0 parabolic, >0 hyperbolic."""
    return abs(1 - phi.lam) ** 2 / (1 - abs(phi.a) ** 2) - 4.0


def _unit(z: complex) -> complex:
    return z / abs(z)


def _parabolic_point(phi: DiskAutomorphism) -> complex:
    # the double root (1 + lam)/(2 conj(a)) is well conditioned, unlike either quadratic root
    return _unit((1 + phi.lam) / (2 * phi.a.conjugate()))


def chart_increment(phi: DiskAutomorphism, p: complex, u: complex = 0j) -> complex:
    """``K(rho phi rho^{-1}(u)) - K(u)`` with ``rho(z) = conj(p) z`` and ``K(z) = (1+z)/(1-z)``.

    For a parabolic map fixing ``p`` this is the constant ``i c`` of the
    half-plane translation ``w -> w + i c``.
    """
    v = p.conjugate() * evaluate(phi, p * u)
    return (1 + v) / (1 - v) - (1 + u) / (1 - u)


def _hyperbolic(phi: DiskAutomorphism, r1: complex, r2: complex) -> Hyperbolic:
    p, q = _unit(r1), _unit(r2)
    dp, dq = derivative(phi, p).real, derivative(phi, q).real
    if dp > dq:
        p, q, dp, dq = q, p, dq, dp
    return Hyperbolic(p, q, float(dp), float(dq))


def _elliptic(phi: DiskAutomorphism, roots) -> Elliptic:
    if roots is None:
        fixed = 0j
    else:
        fixed = min(roots, key=abs)
    return Elliptic(fixed, complex(derivative(phi, fixed)))


def _parabolic(phi: DiskAutomorphism) -> Parabolic:
    p = _parabolic_point(phi)
    c = (chart_increment(phi, p) / 1j).real
    return Parabolic(p, 1 if c > 0 else -1)


def _decide(phi: DiskAutomorphism, tol: Tolerances):
    if is_identity(phi, tol):
        raise IdentityError("the identity fixes every point")
    gap = trace_gap(phi)
    roots = _quadratic_roots(phi)
    if gap < -tol.parabolic_band:
        return Kind.ELLIPTIC, roots
    if gap > tol.parabolic_band:
        return Kind.HYPERBOLIC, roots
    # inside the band: decide from the roots themselves
    if roots is None:
        # only a == 0 with |1 - lam| == 2, i.e. the identity, lands here
        raise NumericallyAmbiguous("rotation inside the parabolic band")
    r1, r2 = roots
    if abs(r1 - r2) <= tol.root_coincide:
        return Kind.PARABOLIC, roots
    m1, m2 = abs(r1), abs(r2)
    if abs(m1 - 1) <= tol.boundary and abs(m2 - 1) <= tol.boundary:
        return Kind.HYPERBOLIC, roots
    if min(m1, m2) < 1 - tol.root_coincide:
        return Kind.ELLIPTIC, roots
    raise NumericallyAmbiguous(
        f"trace gap {gap:.3e} is inside the parabolic band but roots {r1!r}, {r2!r} "
        "are neither coincident nor both on the circle"
    )


def classify(phi: DiskAutomorphism, tol: Tolerances = DEFAULT_TOL) -> Classification:
    kind, roots = _decide(phi, tol)
    if kind is Kind.ELLIPTIC:
        return _elliptic(phi, roots)
    if kind is Kind.HYPERBOLIC:
        return _hyperbolic(phi, *roots)
    return _parabolic(phi)
