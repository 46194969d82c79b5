from fractions import Fraction
from math import comb

import mpmath
import pytest
import sympy

from simcore.exactmath import RadicalNumber
from simcore.limitdist import (
    chi_square_mgf_check,
    compare_limits,
    sinc_series,
    z_mgf_series,
    z_moments,
)

mpmath.mp.dps = 50


def z_standardized_numeric(R):
    """Standardized moments of Z from its cumulants 2^r (r-1)! zeta(2r) / (4 pi^2)^r."""
    kappa = [0] + [2**r * mpmath.factorial(r - 1) * mpmath.zeta(2 * r) / (4 * mpmath.pi**2) ** r
                   for r in range(1, R + 1)]
    raw = [mpmath.mpf(1)]
    for n in range(1, R + 1):
        raw.append(sum(comb(n - 1, k - 1) * kappa[k] * raw[n - k] for k in range(1, n + 1)))
    mu = raw[1]
    central = [sum(comb(n, k) * raw[k] * (-mu) ** (n - k) for k in range(n + 1)) for n in range(R + 1)]
    return {r: central[r] / central[2] ** (mpmath.mpf(r) / 2) for r in range(3, R + 1)}


def test_chi_square_mgf():
    f = chi_square_mgf_check(6)
    assert f.coeffs[:3] == (1, 1, Fraction(3, 2))
    with pytest.raises(ValueError):
        chi_square_mgf_check(0)


def test_z_mgf_low_order():
    f = z_mgf_series(4)
    assert f[0] == 1
    assert f[1] == Fraction(1, 12)
    assert f[2] == Fraction(7, 1440)


def test_z_mgf_against_sympy():
    x = sympy.symbols("x", positive=True)
    ser = sympy.series(sympy.sqrt(x / 2) / sympy.sin(sympy.sqrt(x / 2)), x, 0, 10).removeO()
    f = z_mgf_series(9)
    for n in range(10):
        c = sympy.Rational(ser.coeff(x, n))
        assert f[n] == Fraction(int(c.p), int(c.q))


def test_sinc_times_reciprocal():
    s = sinc_series(12)
    assert (s * s.reciprocal()).is_one()


def test_z_low_moments():
    zm = z_moments(4)
    assert zm.straight[1] == Fraction(1, 12)
    assert zm.straight[2] == Fraction(7, 720)
    assert zm.central[2] == Fraction(1, 360)


def test_z_standardized_exact_values():
    a = z_moments(9).standardized
    assert a[3] == RadicalNumber(Fraction(4, 7), 10)
    assert a[4] == RadicalNumber.rational(Fraction(57, 7))
    assert a[5] == RadicalNumber(Fraction(920, 77), 10)
    assert a[6] == RadicalNumber.rational(Fraction(1537805, 7007))
    assert a[7] == RadicalNumber(Fraction(466860, 1001), 10)
    assert a[8] == RadicalNumber.rational(Fraction(193032265, 17017))
    assert a[9] == RadicalNumber(Fraction(70231858960, 2263261), 10)


def test_z_standardized_against_cumulant_oracle():
    exact = z_moments(9).standardized
    numeric = z_standardized_numeric(9)
    for r in range(3, 10):
        value = mpmath.mpf(exact[r].coefficient.numerator) / exact[r].coefficient.denominator
        value *= mpmath.sqrt(exact[r].radicand)
        assert abs(value - numeric[r]) < mpmath.mpf(10) ** -30 * abs(numeric[r])


def test_compare_limits_all_equal():
    cmp = compare_limits(9)
    assert [row.r for row in cmp.rows] == list(range(3, 10))
    assert cmp.all_equal
    assert cmp.rows[0].line() == "alpha_3: equal combinatorial=4/7*sqrt(10) Z=4/7*sqrt(10)"


def test_compare_beyond_available_orders():
    cmp = compare_limits(10)
    assert cmp.rows[-1].combinatorial is None
    assert "no combinatorial side" in cmp.rows[-1].line()
    assert not cmp.all_equal


def test_order_checks():
    with pytest.raises(ValueError):
        z_moments(2)
    with pytest.raises(ValueError):
        z_mgf_series(0)
