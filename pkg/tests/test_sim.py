import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmclab import laws, sim
from gmclab.errors import DomainError


def test_circle_point_variance():
    cfg = sim.FieldConfig("circle", 64, seed=4)
    v = sim.field_array(cfg, 4000)
    target = sim.circle_point_variance(64)
    assert np.mean(v.var(axis=0)) == pytest.approx(target, rel=0.03)
    assert abs(v.mean()) < 0.05


def test_circle_effective_kappa():
    cfg = sim.FieldConfig("circle", 1024)
    # H_{N/2} - log N + kappa
    assert cfg.effective_kappa == pytest.approx(np.sum(1 / np.arange(1, 513)) - np.log(1024))


def test_circle_nugget_adds_variance():
    a = sim.field_array(sim.FieldConfig("circle", 32, kappa=0.7, seed=1), 4000)
    assert np.mean(a.var(axis=0)) == pytest.approx(sim.circle_point_variance(32) + 1.4, rel=0.03)


@pytest.mark.parametrize("method", ["dense", "circulant"])
def test_interval_covariance(method):
    cfg = sim.FieldConfig("interval", 64, seed=2, method=method)
    v = sim.field_array(cfg, 6000)
    row = sim.interval_covariance_row(64, cfg.kappa)
    emp = np.cov(v, rowvar=False)
    for lag in (0, 1, 7, 30):
        assert np.mean(np.diagonal(emp, lag)) == pytest.approx(row[lag], abs=0.25)


def test_interval_zero_kappa_rejected():
    with pytest.raises(sim.CovarianceError):
        sim.field_array(sim.FieldConfig("interval", 64, kappa=0.0), 1)


@pytest.mark.parametrize("kw", [dict(N=100), dict(N=8), dict(kappa=-1.0), dict(method="svd")])
def test_config_validation(kw):
    args = dict(geometry="interval", N=64) | kw
    with pytest.raises(DomainError):
        sim.FieldConfig(**args)


@pytest.mark.parametrize("geometry", ["interval", "circle"])
def test_bit_reproducible(geometry):
    cfg = sim.FieldConfig(geometry, 128, seed=9)
    assert np.array_equal(sim.field_array(cfg, 10), sim.field_array(cfg, 10))
    other = sim.FieldConfig(geometry, 128, seed=9, stream=1)
    assert not np.array_equal(sim.field_array(cfg, 10), sim.field_array(other, 10))


def test_thread_count_does_not_change_results():
    cfg = sim.FieldConfig("circle", 64, seed=3)
    one = sim.masses(cfg, 0.4, 0.0, 0.0, 300, threads=1)
    many = sim.masses(cfg, 0.4, 0.0, 0.0, 300, threads=3)
    assert np.array_equal(one, many)


def test_iterator_matches_array():
    cfg = sim.FieldConfig("interval", 32, seed=5)
    arr = sim.field_array(cfg, 140)
    it = np.array([f.values for f in sim.sample_field(cfg, 140)])
    assert np.array_equal(arr, it)


def test_zero_beta_mass_is_riemann_sum():
    cfg = sim.FieldConfig("circle", 64)
    m = sim.masses(cfg, 0.0, 0.0, 0.0, 5)
    assert np.allclose(m, 1.0, rtol=1e-14)


def test_total_mass_sample_and_array_agree():
    cfg = sim.FieldConfig("interval", 64, seed=6)
    f = next(sim.sample_field(cfg))
    assert sim.total_mass(f, 0.3, 0.2, 0.1) == pytest.approx(
        sim.total_mass(f.values[None, :], 0.3, 0.2, 0.1, config=cfg)[0], rel=1e-14)
    with pytest.raises(DomainError):
        sim.total_mass(f.values, 0.3)


@given(st.floats(0.0, 0.9), st.floats(0.01, 1.0))
@settings(max_examples=20)
def test_mass_decreases_with_interval_potential(beta, dl):
    cfg = sim.FieldConfig("interval", 32, seed=8)
    f = next(sim.sample_field(cfg))
    assert sim.total_mass(f, beta, 0.1 + dl, 0.2) < sim.total_mass(f, beta, 0.1, 0.2)


def test_circle_potential_needs_equal_lambdas():
    with pytest.raises(DomainError):
        sim.log_potential(sim.FieldConfig("circle", 32), 0.1, 0.2)


def test_jackknife_mean_matches_classical_error():
    x = np.random.default_rng(0).normal(size=5000)
    est, se = sim.jackknife(x, np.mean)
    assert est == pytest.approx(x.mean(), abs=1e-12)
    assert se == pytest.approx(x.std(ddof=1) / np.sqrt(x.size), rel=0.1)


def test_moment_experiment_small():
    cfg = sim.FieldConfig("circle", 256, seed=1)
    r = sim.moment_experiment(cfg, 0.5, orders=(0, 1, 2), n_samples=2000)
    assert r.estimates[0] == (1.0, 0.0)
    v, se = r.estimates[1]
    assert abs(v - 1.0) < 5 * se
    assert r.targets[2] == pytest.approx(laws.moment_product(2, laws.GMCLawParams("circle", 4.0)))
    assert json.loads(r.to_json())["kind"] == "moments"


def test_moment_experiment_rejects_divergent_order():
    with pytest.raises(DomainError):
        sim.moment_experiment(sim.FieldConfig("circle", 64), 0.8, orders=(2,), n_samples=10)


@pytest.mark.parametrize("n", [2, 3])
def test_ipr_at_zero_beta(n):
    r = sim.ipr_experiment(0.0, n=n, Ns=(64, 128, 256), n_samples=50)
    for N, (v, _) in r.estimates.items():
        assert v == pytest.approx(float(N) ** (1 - n), rel=1e-12)
    assert r.extra["slope"] == pytest.approx(1 - n, abs=1e-10)


def test_ipr_slope_small_run():
    r = sim.ipr_experiment(0.4, n=2, Ns=(256, 512, 1024), n_samples=400, seed=3)
    assert abs(r.extra["slope"] - r.extra["predicted_slope"]) < 0.1


def test_maximum_demo_runs():
    r = sim.maximum_experiment("circle", Ns=(64, 128, 256, 512), n_samples=100)
    means = [r.estimates[N][0] for N in (64, 128, 256, 512)]
    assert all(a < b for a, b in zip(means, means[1:]))
    assert "demo" in r.status
