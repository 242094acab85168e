import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from kdquad.bessel import bessel_j, bessel_j_orders


def series_oracle(n, x, dps=60):
    """Direct power series at high precision; independent of the recurrence."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        sign = 1
        if n < 0:
            n, sign = -n, (-1) ** n
        half = x / 2
        total = mpmath.mpf(0)
        k = 0
        while True:
            term = (-1) ** k * half ** (2 * k + n) / (mpmath.factorial(k) * mpmath.factorial(k + n))
            total += term
            if k > 10 and abs(term) < mpmath.mpf(10) ** (-dps + 5):
                break
            k += 1
        return float(sign * total)


def test_origin():
    assert bessel_j(0, 0.0) == 1.0
    for n in (-3, -1, 1, 2, 7):
        assert bessel_j(n, 0.0) == 0.0


def test_j1_at_one():
    assert bessel_j(1, 1.0) == pytest.approx(0.4400505857449335, abs=1e-15)
    assert series_oracle(1, 1.0) == pytest.approx(0.4400505857449335, abs=1e-15)


def test_normalization_identity_at_2_5():
    j = bessel_j_orders(40, 2.5)
    total = j[0] ** 2 + 2 * np.sum(j[1:] ** 2)
    assert abs(total - 1) < 1e-14


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 7.1, 15.0, 33.3, 50.0])
def test_against_series_oracle(x):
    dps = 60 if x < 20 else 120
    j = bessel_j_orders(40, x)
    for n in range(41):
        assert abs(j[n] - series_oracle(n, x, dps)) < 1e-12


@given(n=st.integers(-60, 60), x=st.floats(-50.0, 50.0))
def test_against_scipy(n, x):
    assert abs(bessel_j(n, x) - special.jv(n, x)) < 1e-12


@given(n=st.integers(0, 40), x=st.floats(-50.0, 50.0))
def test_negative_order_reflection(n, x):
    assert bessel_j(-n, x) == (-1) ** n * bessel_j(n, x)


@given(n=st.integers(0, 40), x=st.floats(0.0, 50.0))
def test_negative_argument_parity(n, x):
    assert bessel_j(n, -x) == (-1) ** n * bessel_j(n, x)


@given(x=st.floats(0.0, 50.0))
def test_sum_of_squares(x):
    j = bessel_j_orders(int(x) + 40, x)
    assert abs(j[0] ** 2 + 2 * math.fsum(j[1:] ** 2) - 1) < 1e-13


def test_large_argument_still_total():
    assert bessel_j(0, 200.0) == pytest.approx(float(mpmath.besselj(0, 200)), abs=1e-12)
    assert bessel_j(3, 1e-300) == 0.0
