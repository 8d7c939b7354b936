"""Scalar special functions: log Gamma, digamma, Hurwitz zeta, Bernoulli
polynomials and Ruijsenaars' multiple Bernoulli polynomials.

All logarithms are on the principal branch.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from gmclab import kernels
from gmclab.errors import DomainError, OrderTooLargeError, PoleError

EULER_GAMMA = 0.57721566490153286061
BERNOULLI_MAX = 64
MULTI_BERNOULLI_MAX = 16


def _is_nonpositive_integer(z) -> np.ndarray:
    z = np.asarray(z)
    return (np.imag(z) == 0) & (np.real(z) <= 0) & (np.real(z) == np.round(np.real(z)))


def ln_gamma(z):
    """log Gamma(z) on the principal branch.

    Real positive input gives a real result; anything else is complex.

    Parameters
    ----------
    z : complex or array_like
        Argument, not a nonpositive integer.

    Returns
    -------
    float, complex or ndarray
    """
    arr = np.asarray(z)
    if np.any(_is_nonpositive_integer(arr)):
        raise PoleError(f"log Gamma has a pole at {z!r}")
    out = kernels.loggamma(arr.astype(np.complex128))
    if not np.iscomplexobj(arr) and np.all(arr > 0):
        out = out.real
    if out.ndim == 0:
        return out.item()
    return out


def gamma_ratio_log(num, den):
    """sum(log Gamma(num)) - sum(log Gamma(den)) for sequences of arguments."""
    return complex(np.sum(ln_gamma(np.asarray(num, dtype=complex)))
                   - np.sum(ln_gamma(np.asarray(den, dtype=complex))))


@lru_cache(maxsize=None)
def bernoulli_numbers(nmax: int = BERNOULLI_MAX) -> tuple:
    """Exact B_0..B_nmax (convention B_1 = -1/2)."""
    B = [Fraction(1)]
    for m in range(1, nmax + 1):
        s = sum(comb(m + 1, k) * B[k] for k in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


_B_FLOAT = np.array([float(b) for b in bernoulli_numbers()])


def digamma(x):
    """psi(x) for real x > 0 (recurrence up to x >= 10, then asymptotic)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("digamma implemented for x > 0 only")
    acc = np.zeros_like(x)
    y = x.copy()
    while np.any(y < 10.0):
        m = y < 10.0
        acc[m] -= 1.0 / y[m]
        y[m] += 1.0
    inv2 = 1.0 / (y * y)
    s = np.zeros_like(y)
    for k in range(9, 0, -1):
        s = s * inv2 + _B_FLOAT[2 * k] / (2 * k)
    out = acc + np.log(y) - 0.5 / y - s * inv2
    return out.item() if out.ndim == 0 else out


def hurwitz_zeta(s: float, a):
    """Hurwitz zeta zeta(s, a) for real s >= 1, a > 0.

    Euler-Maclaurin after shifting to a+K >= max(15, s).  At s = 1 the
    convention zeta(1, a) = -psi(a) is used.
    """
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise DomainError("hurwitz_zeta needs a > 0")
    if s < 1:
        raise DomainError("hurwitz_zeta implemented for s >= 1")
    if s == 1:
        return -digamma(a)
    lo = max(15.0, float(s))
    K = np.maximum(np.ceil(lo - a), 0).astype(int)
    direct = np.zeros_like(a)
    for k in range(int(K.max(initial=0))):
        m = K > k
        direct[m] += (a[m] + k) ** (-s)
    x = a + K
    tail = x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s)
    poch = s  # (s)_{2j-1}
    xp = x ** (-s - 1.0)
    for j in range(1, 13):
        tail = tail + _B_FLOAT[2 * j] / factorial(2 * j) * poch * xp
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        xp = xp / (x * x)
    out = direct + tail
    return out.item() if out.ndim == 0 else out


def riemann_zeta(p: int) -> float:
    """zeta(p) = zeta(p, 1); zeta(1) taken as gamma (= -psi(1))."""
    return float(hurwitz_zeta(float(p), 1.0))


@lru_cache(maxsize=None)
def _bernoulli_poly_coeffs(n: int) -> tuple:
    B = bernoulli_numbers()
    # coefficient of x^(n-k) is C(n,k) B_k
    return tuple(comb(n, k) * B[k] for k in range(n + 1))


def bernoulli_poly(n: int, x):
    """Bernoulli polynomial B_n(x), n <= 64.

    Python ``int``/``float``/``Fraction`` scalars are evaluated exactly in
    rational arithmetic and rounded once; arrays and complex values use
    Horner's rule in floating point.
    """
    if n < 0 or n > BERNOULLI_MAX:
        raise OrderTooLargeError(f"Bernoulli order {n} outside 0..{BERNOULLI_MAX}")
    coeffs = _bernoulli_poly_coeffs(n)
    if isinstance(x, (int, float, Fraction)) and not isinstance(x, bool) and np.isfinite(x):
        xf = Fraction(x)
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * xf + c
        return float(acc)
    x = np.asarray(x)
    acc = np.zeros_like(x, dtype=np.result_type(x, float))
    for c in coeffs:
        acc = acc * x + float(c)
    return acc.item() if acc.ndim == 0 else acc


def _series_mul(u, v, n):
    return [sum(u[i] * v[k - i] for i in range(k + 1)) for k in range(n + 1)]


@lru_cache(maxsize=256)
def _multiple_bernoulli_series(a: tuple, kmax: int, x) -> tuple:
    """Exact Taylor coefficients of f(t) e^{-x t} as Fractions (coefficient
    of t^k, not yet multiplied by k!)."""
    B = bernoulli_numbers(max(kmax, 1) + 1)
    # t/(1-e^{-a t}) = sum_n B_n(1) a^{n-1} t^n / n!, with B_n(1) = (-1)^n B_n
    ser = [Fraction(1)] + [Fraction(0)] * kmax
    for aj in a:
        af = Fraction(aj)
        fac = [(-1) ** n * B[n] * af ** (n - 1) / factorial(n) for n in range(kmax + 1)]
        ser = _series_mul(ser, fac, kmax)
    if x != 0:
        xf = Fraction(x)
        ex = [(-xf) ** n / factorial(n) for n in range(kmax + 1)]
        ser = _series_mul(ser, ex, kmax)
    return tuple(ser)


def multiple_bernoulli(M: int, m: int, a, x=0.0) -> float:
    """Multiple Bernoulli polynomial B_{M,m}(x | a).

    m-th derivative at t = 0 of t^M prod_j (1 - e^{-a_j t})^{-1} e^{-x t},
    from exact rational Taylor coefficients (the periods and x are converted
    to rationals exactly).

    Parameters
    ----------
    M : int
        Order; must equal len(a).
    m : int
        Degree, m <= 16.
    a : sequence of float
        Positive periods.
    x : float
    """
    a = tuple(float(v) for v in np.atleast_1d(a)) if M > 0 else ()
    if len(a) != M:
        raise DomainError("len(a) must equal M")
    if any(v <= 0 for v in a):
        raise DomainError("periods must be positive")
    if m < 0 or m > MULTI_BERNOULLI_MAX:
        raise OrderTooLargeError(f"degree {m} outside 0..{MULTI_BERNOULLI_MAX}")
    ser = _multiple_bernoulli_series(a, m, float(x))
    return float(ser[m] * factorial(m))


@lru_cache(maxsize=256)
def multiple_bernoulli_at_zero(a: tuple, kmax: int) -> tuple:
    """B_{M,k}(0|a) / k! for k = 0..kmax as floats (internal, uncapped)."""
    ser = _multiple_bernoulli_series(tuple(float(v) for v in a), kmax, 0.0)
    return tuple(float(c) for c in ser)


def multiple_bernoulli_poly(M: int, a, w):
    """B_{M,M}(w|a) for real/complex/array w (polynomial of degree M)."""
    c = multiple_bernoulli_at_zero(tuple(float(v) for v in np.atleast_1d(a)), M)
    w = np.asarray(w)
    # B_{M,M}(w) = sum_k C(M,k) B_{M,k}(0) (-w)^{M-k}
    out = sum(comb(M, k) * c[k] * factorial(k) * (-w) ** (M - k) for k in range(M + 1))
    return out.item() if np.ndim(out) == 0 else out
