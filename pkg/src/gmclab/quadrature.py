"""Shared numerical engines: semi-infinite quadrature, truncated infinite
products with analytic tails, and optimally truncated asymptotic series.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

from gmclab.errors import ConvergenceError, DomainError, TailBoundError
from gmclab.special import hurwitz_zeta


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    split_point: float = 1.0
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0 or self.split_point <= 0:
            raise DomainError("tolerances and split_point must be positive")


@dataclass
class QuadResult:
    value: complex | float
    error: float


def taylor_coefficients(f: Callable, radius: float, n: int = 64) -> np.ndarray:
    """Taylor coefficients of f at 0 from samples on the circle |t| = radius.

    f must be holomorphic on the closed disc except for a removable
    singularity at 0 (never sampled).  Returns the first n//2 coefficients.
    """
    k = np.arange(n)
    t = radius * np.exp(2j * np.pi * (k + 0.5) / n)
    vals = np.asarray(f(t), dtype=complex)
    j = np.arange(n // 2)
    c = np.fft.fft(vals)[: n // 2] / n * np.exp(-1j * np.pi * j / n)
    c = c / radius ** j
    return c


def _quad_parts(f, lo, hi, cfg, complex_valued, points=None):
    opts = dict(epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions)
    if complex_valued:
        vr, er = integrate.quad(lambda t: np.real(f(t)), lo, hi, **opts)
        vi, ei = integrate.quad(lambda t: np.imag(f(t)), lo, hi, **opts)
        return complex(vr, vi), float(np.hypot(er, ei))
    v, e = integrate.quad(lambda t: float(np.real(f(t))), lo, hi, **opts)
    return v, e


def integrate_semi_infinite(
    integrand: Callable,
    config: Optional[QuadratureConfig] = None,
    zero_behavior: float = 0.0,
    decay_rate: float = 1.0,
    series_radius: Optional[float] = None,
    complex_valued: bool = False,
) -> QuadResult:
    """Integrate ``integrand`` over (0, inf).

    Parameters
    ----------
    integrand : callable
        Scalar function of t > 0.  When ``series_radius`` is given it must also
        accept complex ndarrays: the piece (0, series_radius/4] is then
        integrated from its Taylor expansion, which removes the cancellation
        many of these integrands suffer at small t.
    config : QuadratureConfig
    zero_behavior : float
        Leading power k of the integrand at 0 (t^k, k >= -0.5).
    decay_rate : float
        Declared exponential decay rate at infinity; fixes the cutoff of the
        tail piece (e^{-40} relative).
    series_radius : float, optional
        Radius of a disc around 0 on which the integrand is holomorphic.
    complex_valued : bool

    Returns
    -------
    QuadResult
    """
    cfg = config or QuadratureConfig()
    if zero_behavior < -0.5:
        raise DomainError("zero_behavior must be >= -0.5")
    if decay_rate <= 0:
        raise DomainError("decay_rate must be positive")
    total = 0.0
    err = 0.0
    lo = 0.0
    if series_radius is not None:
        c = taylor_coefficients(integrand, series_radius)
        t0 = series_radius / 4.0
        j = np.arange(c.size)
        piece = np.sum(c * t0 ** (j + 1) / (j + 1))
        total += piece if complex_valued else piece.real
        err += 1e-16 * float(np.sum(np.abs(c) * t0 ** (j + 1)))
        lo = t0
    split = max(cfg.split_point, lo)
    if split > lo:
        v, e = _quad_parts(integrand, lo, split, cfg, complex_valued)
        total += v
        err += e
    # tail: t = split * e^u
    t_max = split + 40.0 / decay_rate
    u_max = np.log(t_max / split)

    def mapped(u):
        t = split * np.exp(u)
        return integrand(t) * t

    v, e = _quad_parts(mapped, 0.0, u_max, cfg, complex_valued)
    total += v
    err += e
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
    if err > 1e3 * tol:
        raise ConvergenceError(
            f"quadrature error estimate {err:.3g} exceeds tolerance {tol:.3g}",
            estimate=err, value=total)
    return QuadResult(total, err)


@dataclass(frozen=True)
class ProductTruncation:
    max_terms: int = 10_000
    tail_order: int = 2
    target_rel_error: float = 1e-5

    def __post_init__(self):
        if self.max_terms < 1 or self.target_rel_error <= 0:
            raise DomainError("invalid ProductTruncation")


@dataclass
class ProductResult:
    value: complex | float
    log_value: complex
    tail: complex
    residual_bound: float
    terms: int


def _log_terms(term, ms, log_term):
    try:
        vals = np.asarray(term(ms))
        if vals.shape != ms.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([term(int(m)) for m in ms])
    if log_term:
        return vals.astype(complex)
    return np.log(vals.astype(complex))


def _roundoff(logs):
    # accumulated rounding of the partial sum plus per-term evaluation noise
    return float(4e-16 * np.sum(np.abs(logs)) + 1e-16 * np.sqrt(logs.size) * np.max(np.abs(logs)))


def truncated_product(
    term: Callable,
    trunc: Optional[ProductTruncation] = None,
    tail_model: Optional[Sequence[complex]] = None,
    start: int = 1,
    log_term: bool = False,
    strict: bool = True,
    tail_offset: float = 0.0,
) -> ProductResult:
    """prod_{m >= start} term(m), truncated at ``max_terms`` factors.

    The tail sum_{m > K} log term(m) is modelled as sum_j c_j m^{-j}
    (j = 2, 3, ...) and summed exactly with Hurwitz zeta values.

    Parameters
    ----------
    term : callable
        Integer (or integer ndarray) -> factor; with ``log_term=True`` it
        returns log factor instead (preferred when factors are ratios of huge
        Gamma values).
    trunc : ProductTruncation
    tail_model : sequence, optional
        (c_2, c_3, ...) of the expansion in powers of 1/(m + tail_offset).
        If omitted, ``tail_order`` coefficients are fitted by
        least squares to the last computed log terms.
    start : int
    strict : bool
        Raise ``TailBoundError`` if the residual bound exceeds
        ``target_rel_error``.
    """
    tr = trunc or ProductTruncation()
    K = start + tr.max_terms - 1
    ms = np.arange(start, K + 1)
    logs = _log_terms(term, ms, log_term)
    partial = complex(np.sum(logs))
    if np.all(logs == 0) and tail_model is None:
        tail, bound = 0j, 0.0
    elif tail_model is not None:
        cs = list(tail_model)
        contrib = [c * hurwitz_zeta(float(j), K + 1.0 + tail_offset) for j, c in enumerate(cs, start=2)]
        tail = complex(sum(contrib))
        # first omitted term estimated as the last included one, scaled by 1/K
        bound = abs(contrib[-1]) / K if contrib else 0.0
        bound += _roundoff(logs)
    else:
        order = max(tr.tail_order, 1)
        lo = max(start, K // 2)
        fit_m = np.unique(np.geomspace(lo, K, 12).astype(int))
        fit_l = _log_terms(term, fit_m, log_term)

        def fit(nc):
            A = np.stack([fit_m ** (-float(j)) for j in range(2, 2 + nc)], axis=1)
            coef, *_ = np.linalg.lstsq(A * fit_m[:, None] ** 2.0, fit_l * fit_m ** 2.0, rcond=None)
            return coef

        def tail_of(coef):
            return complex(sum(c * hurwitz_zeta(float(j), K + 1.0) for j, c in enumerate(coef, start=2)))

        tail = tail_of(fit(order + 1))
        alt = tail_of(fit(order))
        bound = abs(tail - alt) + _roundoff(logs)
    logv = partial + tail
    if strict and bound > tr.target_rel_error:
        raise TailBoundError(f"tail residual bound {bound:.3g} exceeds {tr.target_rel_error:.3g}")
    val = np.exp(logv)
    if abs(logv.imag) < 1e-14:
        val = val.real
    return ProductResult(val, logv, tail, float(bound), tr.max_terms)


@dataclass
class AsymptoticResult:
    value: float | complex
    order: int
    error: float


def evaluate_asymptotic(coeffs: Sequence[complex], x: float) -> AsymptoticResult:
    """Sum sum_{p >= 1} c_p x^{-p} with optimal (smallest-term) truncation.

    ``coeffs[0]`` is c_1.  Zero coefficients are skipped when comparing term
    sizes.  The returned error proxy is the magnitude of the first omitted
    nonzero term (or of the last included one if the series ran out).
    """
    cs = np.asarray(coeffs, dtype=complex)
    if cs.size == 0 or np.all(cs == 0):
        return AsymptoticResult(0.0, 0, 0.0)
    terms = cs * float(x) ** (-np.arange(1, cs.size + 1, dtype=float))
    nz = np.flatnonzero(terms != 0)
    if nz.size >= 2 and abs(terms[nz[1]]) > abs(terms[nz[0]]):
        raise ConvergenceError("asymptotic series diverges from its first term", estimate=abs(terms[nz[1]]))
    total = 0j
    order = 0
    err = 0.0
    prev = np.inf
    for i in nz:
        t = terms[i]
        if abs(t) > prev:
            err = abs(t)
            break
        total += t
        order = i + 1
        prev = abs(t)
        err = abs(t)
        if abs(t) < 1e-17 * abs(total):
            break
    val = total.real if np.all(cs.imag == 0) and not np.iscomplexobj(x) else total
    return AsymptoticResult(val, order, err)


def warn_precision(msg: str):
    warnings.warn(msg, RuntimeWarning, stacklevel=3)
