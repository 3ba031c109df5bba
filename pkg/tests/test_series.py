import math
from fractions import Fraction

import pytest

from schroder_lab.algebra import deformed_factorial, poly_eval
from schroder_lab.errors import CancellationFailure, DegenerateParameter
from schroder_lab.series import (
    PowerSeries,
    compose,
    p_polynomials,
    phi_coefficients,
    phi_functional_residual,
    psi_coefficients,
    psi_functional_residual,
    psi_star_coefficients,
    radius_estimate,
    s1_coefficients,
    s1_functional_residual,
    u_coefficients,
    u_functional_residual,
    u_series_floats,
)

S52 = Fraction(5, 2)


# -- U series -----------------------------------------------------------------


def test_u_seed_coefficients():
    series = u_coefficients(S52, 10)
    assert series.a(1) == Fraction(-4, 3)
    assert series.a(2) == Fraction(-20, 63)


def test_u_seed_formulas_at_several_s():
    for s in (Fraction(3), Fraction(10, 3), Fraction(7, 2)):
        series = u_coefficients(s, 4)
        assert series.a(1) == 2 / (1 - s)
        assert series.a(2) == (5 - 3 * s) / ((s - 1) ** 2 * (s + 1))


def test_u_series_normalization():
    series = u_coefficients(S52, 6)
    assert series.coefficients[:3] == (0, 0, 1)
    assert series.order == 8


def test_u_functional_equation_residual_is_exactly_zero():
    series = u_coefficients(Fraction(3), 50)
    assert all(c == 0 for c in u_functional_residual(series))


def test_u_degenerate_parameter_names_divisor():
    with pytest.raises(DegenerateParameter):
        u_coefficients(Fraction(1), 10)
    with pytest.raises(DegenerateParameter):
        u_coefficients(Fraction(-1), 10)


def test_u_float_mode_matches_exact_to_1e10():
    # the recursion cancels ~0.08n digits per step; the float pipeline must
    # carry guard digits for this to hold (plain float64 fails by n ~ 120)
    exact = u_coefficients(S52, 200)
    floats = u_coefficients(2.5, 200)
    worst = 0.0
    for n in range(1, 201):
        e = exact.a(n)
        worst = max(worst, abs((floats.a(n) - float(e)) / float(e)))
    assert worst < 1e-10


# -- numerator polynomials ----------------------------------------------------


def test_p_seed_polynomials():
    polys = p_polynomials(4)
    assert tuple(polys[0].coefficients) == (2, -2)
    assert tuple(polys[1].coefficients) == (5, -3)


def test_p_degree_formula():
    polys = p_polynomials(12)
    for n in range(2, 13):
        assert polys[n - 1].degree == 1 + (n - 2) * (n - 1) // 2


def test_p_cancellation_is_exact_to_20():
    # raises CancellationFailure internally if the (1-s) division leaves rest
    polys = p_polynomials(20)
    assert len(polys) == 20


def test_p_consistency_with_u_coefficients():
    # a_n (s-1)^2 [n]_s! == p_n(s), exactly, across parameters
    polys = p_polynomials(12)
    for s in (S52, Fraction(3), Fraction(10, 3)):
        series = u_coefficients(s, 12)
        for n in range(1, 13):
            lhs = series.a(n) * (s - 1) ** 2 * deformed_factorial(n, s)
            assert lhs == poly_eval(polys[n - 1], s), (s, n)


def test_p_coefficients_are_integers():
    polys = p_polynomials(14)
    assert all(c.denominator == 1 for p in polys for c in p.coefficients)


def test_cancellation_failure_is_raised_on_corruption():
    # sanity that the guard actually fires: divide a polynomial that is not
    # a multiple of (1-s) and check the remainder is reported
    from schroder_lab.algebra import SPolynomial

    _, rem = SPolynomial([1, 1]).divide_by_one_minus_s()
    assert rem != 0
    assert CancellationFailure  # exported


# -- Schroeder / Poincare series ----------------------------------------------


def test_psi_seed_and_normalization():
    series = psi_coefficients(S52, 10)
    assert series.coefficients[0] == 0
    assert series.coefficients[1] == 1
    assert series.coefficients[2] == Fraction(2, 3)  # 1/(s-1) at s=5/2


def test_psi_matches_log_closed_form_at_s2():
    # Psi(x,2) = -ln(1-2x)/2 = sum 2^(k-1) x^k / k
    series = psi_coefficients(Fraction(2), 12)
    for k in range(1, 13):
        assert series.coefficients[k] == Fraction(2 ** (k - 1), k)


def test_psi_residual_exact_at_s3():
    series = psi_coefficients(Fraction(3), 40)
    assert all(c == 0 for c in psi_functional_residual(series))


def test_phi_reversion_seed():
    series = phi_coefficients(S52, 8)
    assert series.coefficients[1] == 1
    assert series.coefficients[2] == Fraction(-2, 3)  # -1/(s-1)


def test_phi_matches_exponential_closed_form_at_s2():
    # Phi(x,2) = (1-e^(-2x))/2 = sum (-1)^(k+1) 2^(k-1) x^k / k!
    series = phi_coefficients(Fraction(2), 12)
    for k in range(1, 13):
        assert series.coefficients[k] == Fraction(
            (-1) ** (k + 1) * 2 ** (k - 1), math.factorial(k)
        )


def test_phi_residual_exact():
    series = phi_coefficients(Fraction(10, 3), 30)
    assert all(c == 0 for c in phi_functional_residual(series))


def test_composition_phi_psi_is_identity():
    s = Fraction(7, 2)
    N = 30
    psi = psi_coefficients(s, N)
    phi = phi_coefficients(s, N)
    ident = compose(phi, psi)
    assert ident.coefficients[1] == 1
    assert all(c == 0 for k, c in enumerate(ident.coefficients) if k != 1)
    other = compose(psi, phi)
    assert all(c == 0 for k, c in enumerate(other.coefficients) if k != 1)


def test_psi_degenerate_divisors():
    with pytest.raises(DegenerateParameter):
        psi_coefficients(Fraction(0), 10)
    with pytest.raises(DegenerateParameter):
        phi_coefficients(Fraction(1), 10)


# -- s = 1 limit ---------------------------------------------------------------


def test_s1_coefficients_exact_values():
    series = s1_coefficients(8)
    expected = [
        Fraction(2),
        Fraction(4),
        Fraction(25, 3),
        Fraction(215, 12),
        Fraction(589, 15),
        Fraction(7813, 90),
        Fraction(60481, 315),
        Fraction(11821, 28),
    ]
    for n, value in enumerate(expected, start=1):
        assert series.coefficient(n + 4) == value


def test_s1_residual_exact():
    series = s1_coefficients(40)
    assert all(c == 0 for c in s1_functional_residual(series))


# -- fixed-point conjugate series ----------------------------------------------


def test_psi_star_series_seed():
    # for the offset map z -> lam z + (lam-2) z^2 the quadratic Schroeder
    # coefficient is (lam-2)/(lam(1-lam)); cross-checked against the
    # conjugation identity Psi*(z,s) = (s*/s) Psi0(s z/s*, s*)
    s = Fraction(3, 2)
    series = psi_star_coefficients(s, 10)
    lam = 2 - s
    assert series.coefficients[1] == 1
    assert series.coefficients[2] == (lam - 2) / (lam * (1 - lam))
    dual = psi_coefficients(lam, 10)
    assert series.coefficients[2] == s / lam * dual.coefficients[2]


# -- radius estimation -----------------------------------------------------------


def test_radius_estimates_match_piecewise_law():
    targets = {
        Fraction(1, 2): 0.5,
        Fraction(3, 2): 1 / 3,
        Fraction(5, 2): 0.625,
        Fraction(7, 2): 0.875,
    }
    for s, target in targets.items():
        est = radius_estimate(s, 400)
        assert est.n_used >= 50
        assert est.method == "limsup-window"
        assert abs(est.estimate - target) / target < 0.05, (s, est.estimate)


def test_radius_ratio_test_agrees_where_monotone():
    # for s=3 the tail is monotone and the plain ratio test gives the same R
    coeffs = u_series_floats(Fraction(3), 400)
    ratio = abs(coeffs[399] / coeffs[400])
    est = radius_estimate(Fraction(3), 400).estimate
    assert abs(ratio - est) / est < 0.02


def test_radius_requires_enough_terms():
    with pytest.raises(ValueError):
        radius_estimate(S52, 80)


def test_radius_estimator_runs_for_negative_s():
    # outside (0, 4] there is no piecewise law to compare against, but the
    # estimator still runs; at s = -2 the closed form has branch points at
    # -1/2 and 3/2, so the series radius is 1/2
    est = radius_estimate(Fraction(-2), 300)
    assert abs(est.estimate - 0.5) / 0.5 < 0.03


def test_power_series_validates_length():
    with pytest.raises(ValueError):
        PowerSeries(Fraction(0), S52, (Fraction(0),), 3)
