"""Normal forms of disk automorphisms under conjugation.

Each automorphism ``phi`` is conjugated, ``psi = tau o phi o tau^{-1}``, to
one of

* a rotation ``z -> lam z`` with ``lam = phi'(a)`` (elliptic),
* ``psi1(z) = ((1+i)z - 1)/(z + i - 1)`` or ``psi2(z) = ((1-i)z - 1)/(z - i - 1)``
  (parabolic),
* ``psi_r(z) = (z + r)/(1 + r z)`` with ``0 < r < 1`` (hyperbolic).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import mobius
from .config import DEFAULT_TOL, Tolerances
from .errors import (
    ConjugacyFailure,
    DomainError,
    NotTranslation,
    OrientationError,
    PoleError,
    WrongKind,
)
from .mobius import (
    Classification,
    DiskAutomorphism,
    Elliptic,
    Hyperbolic,
    Parabolic,
    compose,
    inverse,
    make_automorphism,
)

PSI1 = DiskAutomorphism(1j, (1 - 1j) / 2)
PSI2 = DiskAutomorphism(-1j, (1 + 1j) / 2)


def psi_r(r: float) -> DiskAutomorphism:
    """``z -> (z + r)/(1 + r z)``, fixing +1 and -1."""
    return make_automorphism(-1.0, -r)


class FormKind(str, Enum):
    ROTATION = "rotation"
    PARABOLIC_PLUS = "parabolic_plus"
    PARABOLIC_MINUS = "parabolic_minus"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class NormalForm:
    kind: FormKind
    conjugator: DiskAutomorphism
    lam: complex | None = None   # Rotation
    r: float | None = None       # Hyperbolic
    residual: float = 0.0

    @property
    def automorphism(self) -> DiskAutomorphism:
        """The normal-form map itself."""
        if self.kind is FormKind.ROTATION:
            return mobius.rotation(self.lam)
        if self.kind is FormKind.PARABOLIC_PLUS:
            return PSI1
        if self.kind is FormKind.PARABOLIC_MINUS:
            return PSI2
        return psi_r(self.r)

    @property
    def parameter(self):
        if self.kind is FormKind.ROTATION:
            return self.lam
        if self.kind is FormKind.HYPERBOLIC:
            return self.r
        return 1 if self.kind is FormKind.PARABOLIC_PLUS else -1


# -- grids and residuals ----------------------------------------------------

def residual_grid(depth: int = 8, angles: int = 32) -> np.ndarray:
    """Points on circles of radius ``1 - 2^-k``, ``k = 1..depth``."""
    radii = 1.0 - 2.0 ** -np.arange(1, depth + 1)
    theta = 2 * np.pi * np.arange(angles) / angles
    return (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


def verify_conjugacy(
    phi: DiskAutomorphism, psi: DiskAutomorphism, tau: DiskAutomorphism, grid_size: int = 8
) -> float:
    """Sup over the residual grid of ``|tau(phi(tau^{-1}(z))) - psi(z)|``."""
    if grid_size < 8:
        raise ValueError("grid_size must be at least 8")
    z = residual_grid(grid_size)
    lhs = tau(phi(inverse(tau)(z)))
    return float(np.max(np.abs(lhs - psi(z))))


# -- charts -----------------------------------------------------------------

def involution(a: complex) -> DiskAutomorphism:
    """``tau_a(z) = (a - z)/(1 - conj(a) z)``; swaps 0 and ``a`` and is its own inverse."""
    if abs(a) >= 1:
        raise DomainError("involution center must lie in the open disk")
    return make_automorphism(1.0, a)


@dataclass(frozen=True)
class HalfPlanePoint:
    w: complex

    @property
    def on_boundary(self) -> bool:
        return self.w.real <= 0


def cayley(z: complex) -> HalfPlanePoint:
    """``K(z) = (1+z)/(1-z)``, mapping the disk onto the right half-plane.

    Boundary points other than 1 are accepted and land on the imaginary axis
    (``on_boundary`` is then true).
    """
    z = complex(z)
    if abs(1 - z) < DEFAULT_TOL.pole:
        raise PoleError("Cayley chart has a pole at z = 1")
    return HalfPlanePoint((1 + z) / (1 - z))


def cayley_inverse(w) -> complex:
    w = complex(w.w if isinstance(w, HalfPlanePoint) else w)
    if abs(1 + w) < DEFAULT_TOL.pole:
        raise PoleError("inverse Cayley chart has a pole at w = -1")
    return (w - 1) / (w + 1)


def dilation(k: float) -> DiskAutomorphism:
    """Disk automorphism that reads ``w -> k w`` in the Cayley chart."""
    # K^{-1}(k K(z)) = (z + r)/(1 + r z) with r = (k - 1)/(k + 1)
    return psi_r((k - 1) / (k + 1))


# -- elliptic ---------------------------------------------------------------

def _require(cls: Classification, expected: type) -> None:
    if not isinstance(cls, expected):
        raise WrongKind(f"expected {expected.__name__} classification, got {type(cls).__name__}")


def elliptic_normal_form(
    phi: DiskAutomorphism, cls: Elliptic, tol: Tolerances = DEFAULT_TOL
) -> NormalForm:
    _require(cls, Elliptic)
    tau = involution(cls.interior_fixed_point)
    lam = cls.multiplier / abs(cls.multiplier)
    res = verify_conjugacy(phi, mobius.rotation(lam), tau)
    if res >= tol.conjugacy:
        raise ConjugacyFailure(f"elliptic conjugacy residual {res:.3e}")
    return NormalForm(FormKind.ROTATION, tau, lam=lam, residual=res)


# -- parabolic --------------------------------------------------------------

def _probe_points(n: int = 50) -> np.ndarray:
    """Half-plane probe points mapped back into the disk."""
    x = np.linspace(0.25, 4.0, 5)
    y = np.linspace(-3.0, 3.0, n // 5)
    w = (x[:, None] + 1j * y[None, :]).ravel()
    return (w - 1) / (w + 1)


def parabolic_normal_form(
    phi: DiskAutomorphism, cls: Parabolic, tol: Tolerances = DEFAULT_TOL
) -> NormalForm:
    _require(cls, Parabolic)
    p = cls.boundary_fixed_point
    u = _probe_points()
    inc = mobius.chart_increment(phi, p, u) / 1j
    c = float(np.mean(inc.real))
    spread = float(np.max(np.abs(inc - c)))
    if spread > tol.translation * max(1.0, abs(c)) or c == 0:
        raise NotTranslation(f"chart increment is not a constant real shift (spread {spread:.3e})")
    rho = mobius.rotation(p.conjugate())
    tau = compose(dilation(2.0 / abs(c)), rho)
    if c > 0:
        kind, psi = FormKind.PARABOLIC_PLUS, PSI1
    else:
        kind, psi = FormKind.PARABOLIC_MINUS, PSI2
    res = verify_conjugacy(phi, psi, tau)
    if res >= tol.conjugacy:
        raise ConjugacyFailure(f"parabolic conjugacy residual {res:.3e}")
    return NormalForm(kind, tau, residual=res)


# -- hyperbolic -------------------------------------------------------------

def _orientation(z1: complex, z2: complex, z3: complex) -> float:
    """Positive when z1 -> z2 -> z3 runs counterclockwise around the circle."""
    return ((z2 - z1).conjugate() * (z3 - z1)).imag


def mobius_from_boundary_triple(
    p: complex, q: complex, u: complex, targets=(1.0, -1.0, 1j), tol: Tolerances = DEFAULT_TOL
) -> DiskAutomorphism:
    """Disk automorphism sending ``(p, q, u)`` to ``targets``.

    Both triples must lie on the unit circle and run in the same rotational
    direction; otherwise the three-point map is a reflection composed with an
    automorphism and :class:`OrientationError` is raised.
    """
    src = [complex(v) for v in (p, q, u)]
    dst = [complex(v) for v in targets]
    for v in src + dst:
        if abs(abs(v) - 1) > tol.boundary:
            raise DomainError(f"{v!r} is not on the unit circle")
    for trip in (src, dst):
        if min(abs(trip[0] - trip[1]), abs(trip[1] - trip[2]), abs(trip[0] - trip[2])) < tol.boundary:
            raise DomainError("triple points must be distinct")
    o_src, o_dst = _orientation(*src), _orientation(*dst)
    if o_src * o_dst <= 0:
        raise OrientationError("triples have opposite orientation")

    def to_standard(z1, z2, z3):
        # z1 -> 0, z2 -> infinity, z3 -> 1
        return np.array([[z3 - z2, -z1 * (z3 - z2)], [z3 - z1, -z2 * (z3 - z1)]])

    m = np.linalg.inv(to_standard(*dst)) @ to_standard(*src)
    return mobius.from_matrix(m / np.sqrt(np.linalg.det(m)), tol)


def _arc_midpoint(p: complex, q: complex) -> complex:
    """Midpoint of the counterclockwise arc from p to q."""
    tp = cmath.phase(p)
    span = (cmath.phase(q) - tp) % (2 * math.pi)
    return cmath.exp(1j * (tp + span / 2))


def hyperbolic_normal_form(
    phi: DiskAutomorphism, cls: Hyperbolic, tol: Tolerances = DEFAULT_TOL
) -> NormalForm:
    _require(cls, Hyperbolic)
    d = cls.multiplier
    r = (1 - d) / (1 + d)
    psi = psi_r(r)
    p, q = cls.attracting_point, cls.repelling_point
    u = _arc_midpoint(p, q)
    # ccw p -> u -> q matches ccw 1 -> i -> -1; the retry uses the other arc
    best = None
    for mid, image in ((u, 1j), (-u, -1j)):
        try:
            tau = mobius_from_boundary_triple(p, q, mid, (1.0, -1.0, image), tol)
        except OrientationError:
            continue
        res = verify_conjugacy(phi, psi, tau)
        if res < tol.conjugacy:
            return NormalForm(FormKind.HYPERBOLIC, tau, r=r, residual=res)
        best = res if best is None else min(best, res)
    raise ConjugacyFailure(f"hyperbolic conjugacy residual {best!r}")


def normal_form(
    phi: DiskAutomorphism, cls: Classification | None = None, tol: Tolerances = DEFAULT_TOL
) -> NormalForm:
    if cls is None:
        cls = mobius.classify(phi, tol)
    if isinstance(cls, Elliptic):
        return elliptic_normal_form(phi, cls, tol)
    if isinstance(cls, Parabolic):
        return parabolic_normal_form(phi, cls, tol)
    return hyperbolic_normal_form(phi, cls, tol)
