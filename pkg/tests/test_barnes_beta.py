import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmclab import barnes_beta as bb
from gmclab.errors import DomainError, OrderTooLargeError, StripError
from gmclab.quadrature import ProductTruncation
from oracles import FROZEN

B22 = bb.BarnesBetaParams(2, 2, (1.0, 2.0), (1.0, 1.0, 1.0))
B23 = bb.BarnesBetaParams(2, 3, (1.0, 1.7), (0.8, 0.5, 0.3, 0.9))
B02 = bb.BarnesBetaParams(0, 2, (), (1.0, 0.5, 0.7))
FRECHET = bb.BarnesBetaParams(1, 0, (2.0,), (2.0,))

bvec = st.lists(st.floats(0.1, 3.0), min_size=2, max_size=6)


def test_subset_offsets_count_and_signs():
    offs = bb.subset_offsets((1.0, 0.5, 0.7, 0.2))
    assert len(offs) == 8
    assert sum(s for s, _ in offs) == 0


@given(bvec, st.floats(-2, 2))
def test_s_operator_kills_low_powers(b, q):
    N = len(b) - 1
    scale = max(1.0, abs(q) + sum(b)) ** N
    for k in range(N):
        assert abs(bb.s_operator(lambda x: x ** k, q, b)) <= 1e-11 * scale


@given(bvec, st.floats(-2, 2))
def test_s_operator_top_power(b, q):
    N = len(b) - 1
    target = (-1) ** N * np.prod(np.arange(1, N + 1, dtype=float)) * np.prod(b[1:])
    scale = max(1.0, abs(q) + sum(b)) ** N
    assert abs(bb.s_operator(lambda x: x ** N, q, b) - target) <= 1e-11 * scale


def test_s_operator_order_cap():
    with pytest.raises(OrderTooLargeError):
        bb.subset_offsets(np.ones(10))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_beta22_moments(k):
    expected = FROZEN[f"beta22_tau2_k{k}"]
    assert bb.eta_mellin(B22, k) == pytest.approx(expected, rel=1e-12)
    assert bb.barnes_beta_moment(B22, k) == pytest.approx(expected, rel=1e-12)


def test_beta22_first_moment_is_two_over_pi():
    assert bb.eta_mellin(B22, 1) == pytest.approx(2 / np.pi, rel=1e-13)


def test_beta23_moment():
    assert bb.eta_mellin(B23, 2) == pytest.approx(FROZEN["beta23_tau1.7_k2"], rel=1e-12)
    assert bb.barnes_beta_moment(B23, 2) == pytest.approx(FROZEN["beta23_tau1.7_k2"], rel=1e-12)


def test_negative_moment_product():
    p = bb.BarnesBetaParams(2, 2, (1.0, 1.4), (2.5, 0.6, 0.9))
    assert bb.barnes_beta_moment(p, 2, sign=-1) == pytest.approx(bb.eta_mellin(p, -2.0), rel=1e-11)
    with pytest.raises(DomainError):
        bb.barnes_beta_moment(p, 3, sign=-1)


def test_moment_product_needs_unit_period():
    with pytest.raises(DomainError):
        bb.barnes_beta_moment(bb.BarnesBetaParams(1, 1, (1.5,), (1.0, 1.0)), 1)


def test_frechet_type_mellin():
    assert bb.eta_mellin(FRECHET, 1.0) == pytest.approx(FROZEN["frechet_tau2_b2_q1"], rel=1e-13)


def test_eta_at_zero_is_one():
    assert bb.eta_mellin(B23, 0) == 1.0


def test_strip():
    with pytest.raises(StripError):
        bb.eta_mellin(B23, -0.8)
    with pytest.raises(StripError):
        bb.levy_khinchine_log_eta(B23, -1.0)


@pytest.mark.parametrize("bad", [dict(M=2, N=1, a=(1.0, 1.0), b=(1.0, 1.0), variant="standard"),
                                 dict(M=1, N=1, a=(1.0,), b=(1.0,)),
                                 dict(M=1, N=1, a=(0.0,), b=(1.0, 1.0)),
                                 dict(M=3, N=1, a=(1.0,) * 3, b=(1.0, 1.0), variant="gamma_type")])
def test_invalid_params(bad):
    with pytest.raises(DomainError):
        bb.BarnesBetaParams(**bad)


@pytest.mark.parametrize("p", [B22, B23, B02, bb.BarnesBetaParams(1, 2, (1.3,), (0.6, 0.4, 1.1)), FRECHET,
                               bb.BarnesBetaParams(2, 1, (1.0, 1.5), (0.8, 0.6))])
@pytest.mark.parametrize("q", [0.45, -0.25, 1.2 + 0.7j])
def test_levy_khinchine_agrees(p, q):
    lk = bb.levy_khinchine_log_eta(p, q)
    assert abs(lk - bb.log_eta(p, q)) < 1e-9


def test_atom_mass():
    assert bb.atom_mass(B02) == pytest.approx(FROZEN["beta02_atom"], rel=1e-13)
    assert bb.atom_mass(B02, "quadrature") == pytest.approx(FROZEN["beta02_atom"], rel=1e-10)
    assert bb.atom_mass(B22) == 0.0


def test_atom_is_large_q_limit():
    assert bb.eta_mellin(B02, 400.0) == pytest.approx(bb.atom_mass(B02), rel=5e-3)


@pytest.mark.parametrize("k, M", [(0, 3), (4, 1), (5, 3), (7, 4)])
def test_multiplicity_two_ways(k, M):
    assert bb.multiplicity(k, M) == pytest.approx(bb.multiplicity_alt(k, M))


@pytest.mark.parametrize("p, q", [(B22, 0.5), (B23, 0.3 + 0.4j), (bb.BarnesBetaParams(1, 2, (1.3,), (0.6, 0.4, 1.1)), -0.2)])
def test_shintani_factorization(p, q):
    r = bb.barnes_factorization(p, q)
    assert abs(r.log_value - bb.log_eta(p, q)) < max(1e-8, 2 * r.residual_bound)


def test_barnes_lattice_factorization():
    r = bb.barnes_factorization(B22, 0.5, kind="barnes")
    assert abs(r.log_value - bb.log_eta(B22, 0.5)) < max(1e-8, 2 * r.residual_bound)


def test_special_unit_periods_factorization():
    p = bb.BarnesBetaParams(2, 2, (1.0, 1.0), (0.5, 1.0, 0.7))
    r = bb.barnes_factorization(p, 0.5, kind="special_a1")
    assert abs(r.log_value - bb.log_eta(p, 0.5)) < 1e-5
    with pytest.raises(DomainError):
        bb.barnes_factorization(B22, 0.5, kind="special_a1")


def test_factorization_tightens_with_more_terms():
    a = bb.barnes_factorization(B22, 0.5, ProductTruncation(max_terms=500))
    b = bb.barnes_factorization(B22, 0.5, ProductTruncation(max_terms=5000))
    exact = bb.log_eta(B22, 0.5)
    assert abs(b.log_value - exact) <= abs(a.log_value - exact) + 1e-14


@pytest.mark.parametrize("p", [B22, B23, bb.BarnesBetaParams(3, 2, (1.0, 1.5, 0.7), (0.9, 0.6, 0.4))])
@pytest.mark.parametrize("q", [0.4, 1.3 + 0.2j])
def test_functional_equation_and_symmetries(p, q):
    for i in range(p.M):
        assert bb.functional_equation_residual(p, q, i) < 1e-10
    for name, r in bb.symmetry_residuals(p, q, 0.35).items():
        assert r < 1e-10, name


@given(st.floats(0.3, 4.0), st.floats(-0.5, 3.0))
@settings(max_examples=25)
def test_scaling(kappa, q):
    assert bb.scaling_residual(B23, q, kappa) < 1e-10
    assert bb.scaling_residual(FRECHET, q, kappa) < 1e-10


@pytest.mark.parametrize("q", [0.17, -0.4, 0.5 + 0.3j])
def test_ratio_sine_form(q):
    p = bb.BarnesBetaParams(2, 1, (1.0, 1.5), (0.8, 0.6))
    direct = bb.ratio_log_mellin(bb.RatioParams(p, bb.sine_bbar0(p)), q)
    assert abs(bb.ratio_mellin_sine(p, q) - direct) < 1e-11


def test_ratio_strip():
    r = bb.RatioParams(FRECHET, 1.0)
    assert bb.ratio_mellin(r, 0.0) == 1.0
    with pytest.raises(StripError):
        bb.ratio_mellin(r, 1.0)
    with pytest.raises(DomainError):
        bb.RatioParams(B22, 1.0)


def test_sample_reproducible():
    a = bb.barnes_beta_sample(B22, 2000, seed=3).values
    b = bb.barnes_beta_sample(B22, 2000, seed=3).values
    c = bb.barnes_beta_sample(B22, 2000, seed=3, stream=1).values
    assert np.array_equal(a, b) and not np.array_equal(a, c)


@pytest.mark.parametrize("p", [B22, B23, FRECHET])
def test_sample_first_moment(p):
    x = bb.barnes_beta_sample(p, 40_000, seed=11).values
    se = x.std(ddof=1) / np.sqrt(x.size)
    assert abs(x.mean() - bb.eta_mellin(p, 1.0)) < 4.5 * se


def test_sample_support():
    x = bb.barnes_beta_sample(B02, 20_000, seed=5).values
    assert np.all((x > 0) & (x <= 1))
    atom = FROZEN["beta02_atom"]
    assert abs(np.mean(x == 1.0) - atom) < 4 * np.sqrt(atom * (1 - atom) / x.size)


def test_sample_csv(tmp_path):
    batch = bb.barnes_beta_sample(B22, 5, seed=1)
    path = tmp_path / "s.csv"
    batch.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# seed=1 stream=0")
    assert [float(v) for v in lines[2:]] == list(batch.values)
