import math

import mpmath as mp
import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import ncgamma.central as central
from ncgamma import (
    DomainError,
    cdf_central,
    coefficient_scheme,
    eta_to_lambda,
    f_gamma_series,
    gamma_frame,
    inv_central,
    inversion_seed,
    invert_expansion,
    lambda_to_eta,
    normal_frame,
    normal_quantile,
)
from ncgamma.asymptotic import _a_coefficients, _eta_terms_regular, _eta_terms_small, f_gamma
from support import rel_err, ulps


def residual(lam, eta):
    """0.5 eta^2 - (lam - log lam - 1) in extended precision."""
    lam = mp.mpf(lam)
    return float(mp.mpf(eta) ** 2 / 2 - (lam - mp.log(lam) - 1))


def tau_of_zeta(zeta):
    zeta = mp.mpf(zeta)
    branch = 0 if zeta < 0 else -1
    return -mp.lambertw(-mp.exp(-1 - zeta * zeta / 2), branch).real


def sympy_f_series(order):
    """Maclaurin coefficients of f = zeta / (tau - 1), solving for tau term by term."""
    z, c = sympy.symbols("z c")
    n = order + 2
    known = [sympy.Integer(1)]  # coefficients of tau - 1 from z^1 on

    def truncate(expr):
        p = sympy.Poly(sympy.expand(expr), z)
        return sum(p.coeff_monomial(z ** k) * z ** k for k in range(n + 2))

    for k in range(2, n + 1):
        u = sum(cf * z ** (j + 1) for j, cf in enumerate(known)) + c * z ** k
        # tau - log(tau) - 1 = sum_{m>=2} (-u)^m / m
        lhs, power = 0, u
        for m in range(2, n + 2):
            power = truncate(power * u)
            lhs += (-1) ** m * power / m
        eq = sympy.Poly(sympy.expand(lhs), z).coeff_monomial(z ** (k + 1))
        known.append(sympy.solve(eq, c)[0])
    u = sum(cf * z ** (j + 1) for j, cf in enumerate(known))
    f = sympy.series(z / u, z, 0, order + 1).removeO()
    return [sympy.Rational(f.coeff(z, k)) for k in range(order + 1)]


def test_lambda_to_eta_values():
    assert lambda_to_eta(1.0) == 0.0
    # references from mpmath at 40 digits
    assert rel_err(lambda_to_eta(2.0), 0.7833936678835931) <= 1e-15
    assert rel_err(lambda_to_eta(0.5), -0.6215258330269874) <= 1e-15
    with pytest.raises(DomainError):
        lambda_to_eta(0.0)


def test_eta_to_lambda_values():
    assert eta_to_lambda(0.0) == 1.0
    for lam in (1e-3, 0.3, 1.7, 50.0):
        assert rel_err(eta_to_lambda(lambda_to_eta(lam)), lam) <= 1e-13
    lam = eta_to_lambda(-10.0)
    assert 0 < lam < 1e-20
    assert abs(lam - math.log(lam) - 1 - 50) <= 1e-10


@given(st.floats(min_value=1e-300, max_value=1e300))
def test_lambda_to_eta_residual(lam):
    eta = lambda_to_eta(lam)
    assert (eta > 0) == (lam > 1) or lam == 1.0
    assert abs(residual(lam, eta)) <= 1e-14 * max(1.0, 0.5 * eta * eta)


@given(st.floats(min_value=-35.0, max_value=1e6))
def test_eta_to_lambda_residual(eta):
    lam = eta_to_lambda(eta)
    assert lam > 0
    assert abs(residual(lam, eta)) <= 1e-14 * max(1.0, 0.5 * eta * eta)


def test_lambda_to_eta_monotone_and_round_trip():
    lams = np.logspace(-4, 4, 5000)
    etas = [lambda_to_eta(float(v)) for v in lams]
    assert all(b > a for a, b in zip(etas, etas[1:]))
    for lam, eta in zip(lams, etas):
        assert rel_err(eta_to_lambda(eta), float(lam)) <= 1e-13


def test_f_series_leading_coefficients():
    a = f_gamma_series(4)
    assert a[0] == 1.0
    assert a[1] == -1 / 3


def test_f_series_matches_sympy():
    ref = sympy_f_series(8)
    got = f_gamma_series(8)
    for r, g in zip(ref, got):
        assert g == float(r)


@pytest.mark.parametrize("order", [0, 9])
def test_f_series_order_range(order):
    with pytest.raises(ValueError):
        f_gamma_series(order)


def test_a_coefficients_relation():
    # A_n = (1/2)_n 2^n a_{2n}, A_n computed by the f_n recursion
    series = f_gamma_series(8)
    A, _ = coefficient_scheme(series, 0.0, 2)
    poch = [1.0, 0.5, 0.75]
    for n in range(3):
        assert abs(A[n] - poch[n] * 2 ** n * series[2 * n]) <= 1e-16
    assert A[1] == series[2]


def test_coefficient_scheme_constant_f():
    A, C = coefficient_scheme([1.0], 0.7, 3)
    assert A == [1.0, 0.0, 0.0, 0.0]
    assert C == [0.0, 0.0, 0.0, 0.0]


def test_coefficient_scheme_gamma():
    A, C = coefficient_scheme(f_gamma, 0.5, 3)
    assert abs(A[0] - 1.0) <= 1e-15
    eta = mp.mpf("0.5")
    ref = (1 - eta / (tau_of_zeta(eta) - 1)) / eta
    assert abs(C[0] - float(ref)) <= 1e-10


def test_coefficient_scheme_depth():
    with pytest.raises(ValueError):
        coefficient_scheme([1.0], 0.5, 4)


def test_expansion_constant_f():
    a, p = 4.0, 0.3
    e = invert_expansion(a, p, normal_frame(a))
    assert (e.eta1, e.eta2, e.eta3) == (0.0, 0.0, 0.0)
    assert e.eta == e.eta0
    assert ulps(e.eta0, normal_quantile(p) / math.sqrt(a)) <= 1


def test_expansion_small_eta0_limit():
    e = invert_expansion(50.0, 0.5, gamma_frame(50.0))
    assert e.eta0 == 0.0
    assert e.eta1 == -1 / 3
    e = invert_expansion(50.0, 0.5 + 1e-9, gamma_frame(50.0))
    assert abs(e.eta1 + 1 / 3) <= 1e-8


def test_small_eta0_forms_match_regular_forms():
    # the small-eta0 forms keep eta1 to O(eta0^2) and eta2 to O(eta0): their
    # gap to the regular formulas must shrink like eta0^3 and eta0^2
    frame = gamma_frame(50.0)
    A = _a_coefficients(frame.f_series)

    def gap(e0):
        small = _eta_terms_small(frame.f_series, e0)
        regular = _eta_terms_regular(frame, e0, A)
        return abs(small[0] - regular[0]), abs(small[1] - regular[1])

    (g1, h1), (g2, h2) = gap(0.01), gap(0.02)
    assert 7.0 < g2 / g1 < 9.0
    assert 3.5 < h2 / h1 < 4.5


def test_expansion_seed_then_refinement():
    a, p = 10.0, 0.3
    e = invert_expansion(a, p, gamma_frame(a))
    x_seed = a * eta_to_lambda(e.eta)
    assert abs(cdf_central(a, x_seed)[0].p - p) <= 1e-3
    calls = []
    original = central._log_residual

    def counting(*args):
        calls.append(args)
        return original(*args)

    central._log_residual = counting
    try:
        x, status = inv_central(a, p, 1 - p)
    finally:
        central._log_residual = original
    assert status.ok
    assert len(calls) <= 3
    assert rel_err(cdf_central(a, x)[0].p, p) <= 1e-15


def test_seed_residual_grid():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        a = 10 ** rng.uniform(0, 4)
        t = 10 ** rng.uniform(-8, math.log10(0.5))
        p, q = (t, 1 - t) if rng.random() < 0.5 else (1 - t, t)
        pq, _ = cdf_central(a, inversion_seed(a, p, q))
        worst = max(worst, abs(pq.p - p))
    assert worst <= 1e-2
