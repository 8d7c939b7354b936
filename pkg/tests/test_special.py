import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmclab.errors import DomainError, OrderTooLargeError, PoleError
from gmclab.special import (
    EULER_GAMMA,
    bernoulli_poly,
    digamma,
    hurwitz_zeta,
    ln_gamma,
    multiple_bernoulli,
    multiple_bernoulli_poly,
    riemann_zeta,
)
from oracles import FROZEN


@pytest.mark.parametrize("z, expected", [(1.0, 0.0), (0.5, FROZEN["lngamma_half"]), (5.0, FROZEN["lngamma_5"])])
def test_ln_gamma_examples(z, expected):
    assert float(ln_gamma(z)) == pytest.approx(expected, rel=1e-15, abs=1e-15)


@given(st.floats(0.1, 100.0))
def test_ln_gamma_real_relative_accuracy(x):
    ref = float(mp.loggamma(x))
    got = float(ln_gamma(x))
    assert abs(got - ref) <= 1e-13 * max(abs(ref), 1e-300) + 1e-16


@given(st.complex_numbers(max_magnitude=60, allow_nan=False, allow_infinity=False))
def test_ln_gamma_complex_principal_branch(z):
    if z.imag == 0 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-6:
        return
    ref = complex(mp.loggamma(z))
    got = complex(ln_gamma(z))
    assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


def test_ln_gamma_vectorized_shape():
    z = np.linspace(0.2, 9, 12).reshape(3, 4)
    assert np.shape(ln_gamma(z)) == (3, 4)


@pytest.mark.parametrize("z", [0, -1, -7])
def test_ln_gamma_poles(z):
    with pytest.raises(PoleError):
        ln_gamma(z)


@pytest.mark.parametrize("s, a, key", [(2.0, 1.0, "zeta_2"), (3.5, 2.2, "hurwitz_3.5_2.2"),
                                       (1.5, 10.0, "hurwitz_1.5_10"), (2.0, 0.3, "hurwitz_2_0.3"),
                                       (1.0, 1.0, "euler_gamma"), (1.0, 0.3, "neg_digamma_0.3"),
                                       (1.0, 4.5, "neg_digamma_4.5")])
def test_hurwitz_zeta_against_mpmath(s, a, key):
    assert float(hurwitz_zeta(s, a)) == pytest.approx(FROZEN[key], rel=1e-12)


@given(st.floats(1.0, 8.0), st.floats(0.05, 30.0))
def test_hurwitz_recurrence(s, a):
    lhs = float(hurwitz_zeta(s, a)) - float(hurwitz_zeta(s, a + 1))
    assert lhs == pytest.approx(a ** -s, rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("a", [0.0, -1.5])
def test_hurwitz_domain(a):
    with pytest.raises(DomainError):
        hurwitz_zeta(2.0, a)


def test_digamma_and_riemann_zeta():
    assert float(digamma(1.0)) == pytest.approx(-EULER_GAMMA, rel=1e-14)
    assert riemann_zeta(1) == pytest.approx(EULER_GAMMA, rel=1e-15)
    assert riemann_zeta(2) == pytest.approx(np.pi ** 2 / 6, rel=1e-14)


@given(st.floats(-5, 5))
def test_bernoulli_poly_degree_one(x):
    assert float(bernoulli_poly(1, x)) == pytest.approx(x - 0.5, abs=1e-14)


@pytest.mark.parametrize("n, x, key", [(10, 1.7, "bernpoly_10_1.7"), (20, -0.4, "bernpoly_20_-0.4")])
def test_bernoulli_poly_against_mpmath(n, x, key):
    assert float(bernoulli_poly(n, x)) == pytest.approx(FROZEN[key], rel=1e-12)


def test_bernoulli_poly_examples():
    assert float(bernoulli_poly(2, 0.0)) == pytest.approx(1 / 6, rel=1e-15)
    # sum_{j=0}^{3} j^2 from the Bernoulli summation formula
    p, x, y = 2, 0, 3
    s = (bernoulli_poly(p + 1, y + 1) - bernoulli_poly(p + 1, x)) / (p + 1)
    assert float(s) == pytest.approx(14.0, rel=1e-14)


@given(st.integers(0, 6), st.integers(0, 20), st.integers(0, 8))
def test_power_sum_formula(p, x, span):
    y = x + span
    s = (bernoulli_poly(p + 1, y + 1) - bernoulli_poly(p + 1, x)) / (p + 1)
    assert float(s) == pytest.approx(sum(j ** p for j in range(x, y + 1)), rel=1e-10, abs=1e-9)


def test_bernoulli_order_cap():
    with pytest.raises(OrderTooLargeError):
        bernoulli_poly(65, 0.1)


@pytest.mark.parametrize("a", [(1.0,), (1.0, 2.0), (0.5, 1.5, 2.5)])
def test_multiple_bernoulli_degree_zero(a):
    assert multiple_bernoulli(len(a), 0, a, 0.37) == pytest.approx(1 / np.prod(a), rel=1e-14)


@given(st.floats(-3, 3), st.floats(0.2, 4), st.floats(0.2, 4))
def test_multiple_bernoulli_b22_closed_form(w, a1, a2):
    expected = w * w / (a1 * a2) - w * (a1 + a2) / (a1 * a2) + (a1 * a1 + 3 * a1 * a2 + a2 * a2) / (6 * a1 * a2)
    assert multiple_bernoulli(2, 2, (a1, a2), w) == pytest.approx(expected, rel=1e-11, abs=1e-11)
    assert float(multiple_bernoulli_poly(2, (a1, a2), w)) == pytest.approx(expected, rel=1e-11, abs=1e-11)


def test_multiple_bernoulli_b22_unit_periods():
    assert multiple_bernoulli(2, 2, (1.0, 1.0), 0.0) == pytest.approx(5 / 6, rel=1e-14)


def test_multiple_bernoulli_reduces_to_classical():
    # t e^{-xt}/(1 - e^{-t}) generates B_n(1 - x)
    for n in range(6):
        assert multiple_bernoulli(1, n, (1.0,), 0.3) == pytest.approx(float(bernoulli_poly(n, 0.7)), abs=1e-13)


def test_multiple_bernoulli_cap():
    with pytest.raises(OrderTooLargeError):
        multiple_bernoulli(2, 17, (1.0, 1.0), 0.0)
