import os
import subprocess
import sys

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmclab import _kernels_py as py
from gmclab import kernels
from gmclab.multigamma import _RADIUS, _asymptotic_coefficients

cy = pytest.importorskip("gmclab._kernels", reason="compiled extension not built")

BACKENDS = [pytest.param(py, id="python"), pytest.param(cy, id="cython")]


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1.0)))


def test_backends_agree_on_loggamma():
    rng = np.random.default_rng(0)
    z = rng.uniform(-30, 60, 5000) + 1j * rng.uniform(-40, 40, 5000)
    assert _rel(cy.loggamma(z), py.loggamma(z)) < 1e-12


def test_backends_agree_on_log_gamma2():
    rng = np.random.default_rng(1)
    w = rng.uniform(-3, 15, 2000) + 1j * rng.uniform(-5, 5, 2000)
    e, d = _asymptotic_coefficients((1.0, 2.5))
    a = cy.log_gamma2(w, 1.0, 2.5, e, d, _RADIUS)
    b = py.log_gamma2(w, 1.0, 2.5, e, d, _RADIUS)
    assert _rel(a, b) < 1e-12


def test_backends_agree_on_weighted_expsum():
    rng = np.random.default_rng(2)
    v = rng.standard_normal((20, 512)) * 3
    logw = np.log(rng.uniform(0.5, 1.5, 512) / 512)
    assert _rel(cy.weighted_expsum(v, 0.45, logw), py.weighted_expsum(v, 0.45, logw)) < 1e-13


@pytest.mark.parametrize("impl", BACKENDS)
@given(st.complex_numbers(max_magnitude=80, allow_nan=False, allow_infinity=False))
def test_loggamma_principal_branch(impl, z):
    if z.imag == 0 and z.real <= 0 and abs(z.real - round(z.real)) < 1e-6:
        return
    ref = complex(mp.loggamma(z))
    assert abs(complex(impl.loggamma(np.array([z]))[0]) - ref) <= 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("impl", BACKENDS)
def test_loggamma_near_one_and_two(impl):
    z = np.array([1 + 1e-9, 2 - 1e-8j, 1.3 + 0.2j])
    ref = [complex(mp.loggamma(x)) for x in z]
    assert np.allclose(impl.loggamma(z), ref, rtol=1e-13, atol=1e-17)


@pytest.mark.parametrize("impl", BACKENDS)
def test_weighted_expsum_overflow_safe(impl):
    v = np.full((1, 4), 800.0)
    out = impl.weighted_expsum(v, 1.0, np.log(np.full(4, 0.25)) - 800.0)
    assert out[0] == pytest.approx(1.0, rel=1e-14)


def test_clog1p_small_argument():
    assert py.clog1p(np.array([1e-18 + 0j]))[0] == pytest.approx(1e-18, rel=1e-15)


def test_active_backend():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_environment_selects_fallback():
    env = dict(os.environ, GMCLAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from gmclab import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_results_identical_in_pure_mode():
    code = "from gmclab import laws; print(repr(laws.mellin(0.7, laws.GMCLawParams('circle', 3.0)).value))"
    env = dict(os.environ, GMCLAB_PURE="1")
    pure = float(subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env,
                                check=True).stdout)
    from gmclab import laws
    assert pure == pytest.approx(laws.mellin(0.7, laws.GMCLawParams("circle", 3.0)).value, rel=1e-13)
