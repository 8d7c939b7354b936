import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmclab import laws
from gmclab import multigamma as mg
from gmclab.errors import ConvergenceError, DomainError, TailBoundError
from gmclab.quadrature import (
    ProductTruncation,
    QuadratureConfig,
    evaluate_asymptotic,
    integrate_semi_infinite,
    taylor_coefficients,
    truncated_product,
)
from oracles import FROZEN


def frullani(t):
    t = np.asarray(t, dtype=complex)
    return -np.expm1(-t) * np.exp(-t) / t  # (e^{-t} - e^{-2t}) / t


def test_frullani_log2():
    r = integrate_semi_infinite(frullani, series_radius=1.0)
    assert r.value == pytest.approx(np.log(2), rel=1e-13)
    assert r.error < 1e-10


def test_frullani_without_series_piece():
    r = integrate_semi_infinite(lambda t: (np.exp(-t) - np.exp(-2 * t)) / t)
    assert r.value == pytest.approx(np.log(2), rel=1e-10)


def test_exponential():
    assert integrate_semi_infinite(lambda t: np.exp(-t)).value == pytest.approx(1.0, rel=1e-13)


@pytest.mark.parametrize("s, expected", [(1.0, 0.0), (1.5, FROZEN["malmsten_s1.5"])])
def test_malmsten(s, expected):
    assert mg.malmsten_log_gamma(s) == pytest.approx(expected, abs=1e-12)


@given(st.floats(0.3, 6.0))
def test_exponential_rate(rate):
    r = integrate_semi_infinite(lambda t: np.exp(-rate * t), decay_rate=rate)
    assert r.value == pytest.approx(1 / rate, rel=1e-11)


def test_invariant_under_more_subdivisions():
    f = lambda t: np.exp(-1.3 * t) * np.cos(3 * t) / np.sqrt(t + 0.1)  # noqa: E731
    a = integrate_semi_infinite(f, QuadratureConfig(max_subdivisions=200), decay_rate=1.3).value
    b = integrate_semi_infinite(f, QuadratureConfig(max_subdivisions=400), decay_rate=1.3).value
    assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_nonconvergence_reports_estimate():
    cfg = QuadratureConfig(abs_tol=1e-30, rel_tol=1e-30, max_subdivisions=3)
    with pytest.raises(ConvergenceError) as ei:
        integrate_semi_infinite(lambda t: np.sin(40 * t) * np.exp(-0.01 * t) / (1 + t), cfg, decay_rate=0.01)
    assert ei.value.estimate > 0


def test_rejects_bad_declarations():
    with pytest.raises(DomainError):
        integrate_semi_infinite(np.exp, zero_behavior=-1.0)
    with pytest.raises(DomainError):
        integrate_semi_infinite(np.exp, decay_rate=0.0)


def test_taylor_coefficients_of_exp():
    c = taylor_coefficients(lambda t: np.exp(t), 1.0, 32)
    fact = np.cumprod(np.r_[1.0, np.arange(1, 16)])
    assert np.allclose(c.real, 1 / fact, atol=1e-15)


def test_unit_product():
    r = truncated_product(lambda m: np.ones_like(m, dtype=float), ProductTruncation(max_terms=50))
    assert r.value == 1.0 and r.residual_bound == 0.0


def _wallis_log(m):
    m = np.asarray(m, dtype=float)
    return -np.log1p(-1.0 / (4 * m * m))


def test_wallis_with_tail():
    # log term = sum_k (4m^2)^{-k}/k: tail coefficients c_2 = 1/4, c_4 = 1/32
    r = truncated_product(_wallis_log, ProductTruncation(max_terms=10_000), tail_model=[0.25, 0.0, 1 / 32],
                          log_term=True)
    assert r.value == pytest.approx(FROZEN["wallis"], rel=1e-8)


def test_wallis_fitted_tail():
    r = truncated_product(_wallis_log, ProductTruncation(max_terms=10_000), log_term=True)
    assert r.value == pytest.approx(np.pi / 2, rel=1e-8)


def test_product_bound_is_honest_under_doubling():
    a = truncated_product(_wallis_log, ProductTruncation(max_terms=2_000), log_term=True)
    b = truncated_product(_wallis_log, ProductTruncation(max_terms=4_000), log_term=True)
    assert abs(a.log_value - b.log_value) <= a.residual_bound + b.residual_bound


def test_product_strict_tail_error():
    with pytest.raises(TailBoundError):
        truncated_product(lambda m: 1.0 / np.asarray(m, dtype=float), ProductTruncation(max_terms=10,
                          target_rel_error=1e-14), log_term=True)


def test_shintani_vs_quadrature():
    prm = mg.MultiGammaParams(2, (1.0, 2.0))
    prod, bound = mg.gamma2_shintani(1.5, 2.0)
    quad = mg.log_multiple_gamma(prm, 1.5, method="quadrature").value - mg._log_modern_constant(1.0, 2.0)
    assert bound < 1e-6
    assert abs(np.exp(prod - quad) - 1) < 1e-6


def test_asymptotic_trivial_and_geometric():
    assert evaluate_asymptotic([0.0, 0.0], 10.0).value == 0.0
    r = evaluate_asymptotic([1.0] * 40, 10.0)
    assert r.value == pytest.approx(1 / 9, rel=1e-14)


def test_asymptotic_divergent():
    with pytest.raises(ConvergenceError):
        evaluate_asymptotic([1.0, 100.0, 1.0], 2.0)


def test_asymptotic_stops_at_smallest_term():
    # factorially divergent coefficients: sum_p p! x^{-p}
    cs = [float(np.prod(np.arange(1, p + 1))) for p in range(1, 30)]
    r = evaluate_asymptotic(cs, 8.0)
    assert 6 <= r.order <= 9
    assert r.error > 0


def test_asymptotic_intermittency_series_order():
    p = laws.GMCLawParams("interval", 50.0, 0.0, 0.0)
    cs = laws.intermittency_coefficients("interval", 2, 0.0, 0.0, 12)
    r = evaluate_asymptotic(cs, 1 / p.mu)
    assert r.order >= 6
    exact = np.log(laws.moment_product(2, p))
    assert abs(r.value - exact) <= max(10 * r.error, 1e-14)
