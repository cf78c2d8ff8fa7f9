import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from autospec.errors import DomainError, PairingError, PoleError
from autospec.mobius import compose, conjugate_by, make_automorphism, rotation
from autospec.normalform import PSI1, PSI2, FormKind, NormalForm, involution, normal_form, psi_r
from autospec.numerics import (
    ExpCusp,
    GridSchedule,
    LogPower,
    Monomial,
    TruncatedOperator,
    automorphism_series,
    bergman_weights,
    bloch_seminorm_estimate,
    eigen_residual,
    eigenfunction_derivative,
    h2_weights,
    little_bloch_radial_limit,
    little_bloch_sequence_limit,
    little_bloch_sequence_terms,
    predicted_eigenvalue,
    spectral_radius_estimate,
    sup_norm_estimate,
    truncated_matrix,
    truncation_eigenvalues,
)

from conftest import automorphisms, disk_points

GRID = GridSchedule()


def test_eigenfunction_values():
    assert abs(ExpCusp(1)(0) - math.exp(-1)) < 1e-15
    z = np.array([0.3, -0.7j, 0.9 + 0.1j])
    assert np.all(ExpCusp(0)(z) == 1)
    assert LogPower(2.5)(0) == 1
    assert abs(Monomial(3)(0.5j) - (0.5j) ** 3) < 1e-16
    with pytest.raises(PoleError):
        ExpCusp(1)(1.0)
    with pytest.raises(DomainError):
        Monomial(0)
    with pytest.raises(DomainError):
        ExpCusp(-1)


def test_eigenfunction_bounds():
    pts = GRID.points()
    for s in (0.1, 1.0, 10.0):
        assert np.max(np.abs(ExpCusp(s)(pts))) < 1
    for t in (-2.0, -0.5, 0.5, 2.0, 6.0):
        assert np.max(np.abs(LogPower(t)(pts))) <= math.exp(math.pi * abs(t) / 2) * (1 + 1e-12)


def _normal(kind, **kw):
    return NormalForm(kind, make_automorphism(1, 0), **kw)


def test_predicted_eigenvalues():
    assert abs(predicted_eigenvalue(_normal(FormKind.PARABOLIC_PLUS), ExpCusp(math.pi)) - 1) < 1e-12
    assert abs(predicted_eigenvalue(_normal(FormKind.PARABOLIC_PLUS), ExpCusp(math.pi / 4)) + 1j) < 1e-12
    assert abs(predicted_eigenvalue(_normal(FormKind.PARABOLIC_MINUS), ExpCusp(math.pi / 4)) - 1j) < 1e-12
    mu = predicted_eigenvalue(_normal(FormKind.HYPERBOLIC, r=0.5), LogPower(1))
    assert abs(mu - cmath.exp(1j * math.log(3))) < 1e-14
    mu = predicted_eigenvalue(_normal(FormKind.ROTATION, lam=1j), Monomial(3))
    assert abs(mu + 1j) < 1e-14
    with pytest.raises(PairingError):
        predicted_eigenvalue(_normal(FormKind.PARABOLIC_PLUS), Monomial(2))


def test_eigen_residual_examples():
    assert eigen_residual(PSI1, ExpCusp(1.3), cmath.exp(-2.6j), GRID) < 1e-10
    assert eigen_residual(PSI2, ExpCusp(1.3), cmath.exp(2.6j), GRID) < 1e-10
    assert eigen_residual(psi_r(0.5), LogPower(2.0), cmath.exp(2j * math.log(3)), GRID) < 1e-10
    assert eigen_residual(rotation(1j), Monomial(3), -1j, GRID) < 1e-13
    # wrong eigenvalue is detected
    assert eigen_residual(PSI1, ExpCusp(1.3), cmath.exp(2.6j), GRID) > 1e-2


def test_grid_schedule():
    g = GridSchedule(depth=3, angles_per_radius=4)
    assert g.points().shape == (13,)
    assert np.allclose(g.radii, [0.5, 0.75, 0.875])
    assert GridSchedule(depth=3, angles_per_radius=4, include_origin=False).points().shape == (12,)


def test_norm_estimates():
    assert sup_norm_estimate(ExpCusp(1), GRID) < 1
    assert sup_norm_estimate(Monomial(3), GRID) == pytest.approx(1 - 2.0**-12, abs=1e-2)
    assert sup_norm_estimate(LogPower(2), GRID) <= math.exp(math.pi)
    assert bloch_seminorm_estimate(Monomial(1), GRID) == 1
    coarse = bloch_seminorm_estimate(ExpCusp(1), GRID)
    fine = bloch_seminorm_estimate(ExpCusp(1), GridSchedule(depth=16, angles_per_radius=128))
    assert coarse > 0 and abs(fine - coarse) <= 0.05 * fine
    assert bloch_seminorm_estimate(LogPower(1), GridSchedule(depth=20)) >= 2 * math.exp(-math.pi / 2) * (1 - 1e-3)


def test_series_rotation():
    c = automorphism_series(make_automorphism(1j, 0), 5).coeffs
    assert np.allclose(c, [0, -1j, 0, 0, 0, 0])


@given(automorphisms())
def test_series_matches_cauchy_integral(phi):
    n = 512
    theta = 2 * np.pi * np.arange(n) / n
    samples = phi(0.5 * np.exp(1j * theta))
    k = np.arange(20)
    cauchy = (samples[None, :] * np.exp(-1j * k[:, None] * theta[None, :])).mean(axis=1) / 0.5**k
    assert np.max(np.abs(automorphism_series(phi, 19).coeffs - cauchy)) < 1e-10


@given(automorphisms(max_radius=0.5), disk_points(max_radius=0.5))
def test_series_matches_evaluation(phi, z):
    # tail is bounded by |a z|^{N+1}/(1 - |a z|) <= 0.25^61 * 4/3
    assert abs(automorphism_series(phi, 60)(z) - phi(z)) < 1e-12


def test_truncated_matrix_rotation_diagonal():
    nu = cmath.exp(0.37j)
    m = truncated_matrix(rotation(nu), 6).entries
    assert np.allclose(m, np.diag(nu ** np.arange(7)), atol=1e-14)


def test_truncated_matrix_composition():
    phi = make_automorphism(cmath.exp(0.8j), 0.4 - 0.2j)
    m = truncated_matrix(phi, 40).entries
    m2 = truncated_matrix(compose(phi, phi), 40).entries
    assert np.max(np.abs((m @ m)[:, 1] - m2[:, 1])) < 1e-8


def test_truncated_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        truncated_matrix(PSI1, 0)
    with pytest.raises(ValueError):
        truncated_matrix(PSI1, 3, weights=[1, 1, 1])


def test_truncation_eigenvalues():
    nu = cmath.exp(2j * math.pi / 5)
    T = TruncatedOperator(np.diag([1, nu, nu**2]), np.ones(3))
    assert np.allclose(sorted(truncation_eigenvalues(T), key=cmath.phase), sorted([1, nu, nu**2], key=cmath.phase))
    T = TruncatedOperator(np.array([[0, 1], [1, 0]], dtype=complex), np.ones(2))
    assert np.allclose(sorted(truncation_eigenvalues(T).real), [-1, 1])
    eig = truncation_eigenvalues(truncated_matrix(rotation(nu), 9))
    for j in range(5):
        assert np.sum(np.abs(eig - nu**j) < 1e-12) == 2


def test_spectral_radius_identity_and_rotation():
    T = TruncatedOperator(np.eye(4, dtype=complex), np.ones(4))
    assert np.allclose(spectral_radius_estimate(T, 10).sequence, 1)
    est = spectral_radius_estimate(truncated_matrix(rotation(cmath.exp(1j)), 30), 16)
    assert np.allclose(est.sequence, 1, atol=1e-12)
    with pytest.raises(ValueError):
        spectral_radius_estimate(T, 0)


def test_finite_section_norm_below_operator_norm():
    # compression of an operator never exceeds its norm; ||C_psi_r|| on H^2 is sqrt((1+r)/(1-r))
    est = spectral_radius_estimate(truncated_matrix(psi_r(0.5), 200), 1)
    assert 1.55 <= est.sequence[0] <= math.sqrt(3) + 1e-12


def test_spectral_radius_similarity_invariance():
    phi = psi_r(0.5)
    a = spectral_radius_estimate(truncated_matrix(phi, 60), 20).estimate
    for tau in (rotation(cmath.exp(1j)), involution(0.3j)):
        b = spectral_radius_estimate(truncated_matrix(conjugate_by(phi, tau), 60), 20).estimate
        assert abs(a - b) < 0.1


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
def test_bergman_weights_against_quadrature(alpha):
    w = bergman_weights(6, alpha)
    for k in range(7):
        # (alpha+1) int_D |z|^{2k} (1-|z|^2)^alpha dA/pi = (alpha+1) int_0^1 2 r^{2k+1} (1-r^2)^alpha dr
        val, _ = quad(lambda r: 2 * (alpha + 1) * r ** (2 * k + 1) * (1 - r * r) ** alpha, 0, 1)
        assert abs(w[k] - val) < 1e-10
    assert np.all(h2_weights(6) == 1)
    with pytest.raises(DomainError):
        bergman_weights(3, -1)


@given(automorphisms(), st.integers(0, 31))
def test_mapping_bounds(phi, idx):
    z = GRID.points()[idx::32]
    assert np.all(np.abs(phi(z)) < 1)


@given(st.floats(0.1, 3), disk_points(max_radius=0.8), st.sampled_from(["cusp", "log", "mono"]))
def test_eigenfunction_derivative_fd(param, z, family):
    f = {"cusp": ExpCusp(param), "log": LogPower(param), "mono": Monomial(int(param) + 1)}[family]
    h = 1e-6
    fd = (f(z + h) - f(z - h)) / (2 * h)
    d = eigenfunction_derivative(f, z)
    assert abs(fd - d) <= 1e-6 * max(1.0, abs(d))


@given(automorphisms(max_radius=0.8), st.floats(0.1, 4))
def test_eigen_identity_transports_under_conjugacy(tau, s):
    # f o tau is an eigenfunction of tau^{-1} psi tau with the same eigenvalue
    phi = conjugate_by(PSI1, tau)
    nf = normal_form(phi)
    mu = predicted_eigenvalue(nf, ExpCusp(s))
    z = GridSchedule(depth=6).points()
    f = ExpCusp(s)
    res = np.max(np.abs(f(nf.conjugator(phi(z))) - mu * f(nf.conjugator(z))))
    assert res < 1e-8


def test_little_bloch_sequence():
    assert abs(little_bloch_sequence_limit(1, -1) - 2 / math.e) < 1e-6
    assert abs(little_bloch_sequence_limit(2, -0.5) - 2 / math.e) < 1e-6
    assert little_bloch_sequence_limit(1e-8, -1) < 1e-7
    with pytest.raises(DomainError):
        little_bloch_sequence_limit(0, -1)
    with pytest.raises(DomainError):
        little_bloch_sequence_limit(1, 0.5)


def test_little_bloch_sequence_matches_naive_evaluation():
    # the stable formula agrees with plain evaluation where the latter is accurate
    s, x0 = 1.3, -0.7
    n = np.arange(1, 50)
    w = x0 + 1j * n
    z = (w + 1) / (w - 1)
    naive = (1 - np.abs(z) ** 2) * np.abs(eigenfunction_derivative(ExpCusp(s), z))
    assert np.allclose(little_bloch_sequence_terms(s, x0, n), naive, rtol=1e-10)


def test_little_bloch_radial():
    assert abs(little_bloch_radial_limit(LogPower(1)) - 2) < 1e-6
    assert abs(little_bloch_radial_limit(LogPower(-2)) - 4) < 1e-6
    with pytest.raises(DomainError):
        little_bloch_radial_limit(LogPower(0))
    with pytest.raises(DomainError):
        little_bloch_radial_limit(ExpCusp(1))
    with pytest.raises(ValueError):
        little_bloch_radial_limit(LogPower(1), r_sequence=[0.5, 0.2])


def test_eigen_identity_suite(rng):
    forms = [
        normal_form(PSI1),
        normal_form(PSI2),
        normal_form(psi_r(0.5)),
        normal_form(rotation(cmath.exp(0.9j))),
    ]
    families = {
        FormKind.PARABOLIC_PLUS: lambda x: ExpCusp(10 * x),
        FormKind.PARABOLIC_MINUS: lambda x: ExpCusp(10 * x),
        FormKind.HYPERBOLIC: lambda x: LogPower(6 * x - 3),
        FormKind.ROTATION: lambda x: Monomial(1 + int(20 * x)),
    }
    for nf in forms:
        for x in rng.uniform(size=50):
            f = families[nf.kind](x)
            mu = predicted_eigenvalue(nf, f)
            assert abs(abs(mu) - 1) < 1e-12
            assert eigen_residual(nf.automorphism, f, mu, GRID) < 1e-9
