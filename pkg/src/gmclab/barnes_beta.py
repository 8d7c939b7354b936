"""Barnes beta distributions beta_{M,N}(a, b).

The Mellin transform is an alternating product of multiple gamma ratios,

    eta_{M,N}(q|a,b) = exp((S_N log G_M)(q|a,b) - (S_N log G_M)(0|a,b)),

where S_N is the alternating subset sum over b_1..b_N with base point b_0.
For M <= N the law lives on (0, 1]; for N = M - 1 ("gamma type") it lives
on (0, inf).
"""
from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field, replace
from math import comb, factorial
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial
from scipy.interpolate import PchipInterpolator

from gmclab import multigamma as mg
from gmclab.kernels import clog1p
from gmclab.errors import (
    DomainError,
    InversionGridError,
    OrderTooLargeError,
    StripError,
    TailBoundError,
)
from gmclab.quadrature import (
    ProductResult,
    ProductTruncation,
    integrate_semi_infinite,
    truncated_product,
)
from gmclab.rng import make_rng, params_hash
from gmclab.special import hurwitz_zeta

S_MAX = 8


@dataclass(frozen=True)
class BarnesBetaParams:
    M: int
    N: int
    a: tuple
    b: tuple
    variant: Optional[str] = None

    def __post_init__(self):
        a = tuple(float(x) for x in np.atleast_1d(self.a)) if self.M else ()
        b = tuple(float(x) for x in np.atleast_1d(self.b))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.M < 0 or self.N < 0:
            raise DomainError("M, N must be nonnegative")
        if len(a) != self.M or len(b) != self.N + 1:
            raise DomainError("need M periods and N+1 b-parameters")
        if any(not np.isfinite(x) or x <= 0 for x in a + b):
            raise DomainError("all parameters must be positive")
        variant = self.variant
        if variant is None:
            variant = "standard" if self.M <= self.N else "gamma_type"
            object.__setattr__(self, "variant", variant)
        if variant == "standard" and self.M > self.N:
            raise DomainError("standard variant requires M <= N")
        if variant == "gamma_type" and self.N != self.M - 1:
            raise DomainError("gamma_type variant requires N = M - 1")
        if variant not in ("standard", "gamma_type"):
            raise DomainError(f"unknown variant {variant!r}")
        if self.N > S_MAX:
            raise OrderTooLargeError(f"N={self.N} exceeds {S_MAX}")

    def as_dict(self):
        return {"M": self.M, "N": self.N, "a": list(self.a), "b": list(self.b), "variant": self.variant}


@dataclass(frozen=True)
class RatioParams:
    base: BarnesBetaParams
    bbar0: float

    def __post_init__(self):
        if self.base.variant != "gamma_type":
            raise DomainError("ratio needs a gamma_type base")
        if not self.bbar0 > 0:
            raise DomainError("bbar0 must be positive")

    @property
    def bar(self) -> BarnesBetaParams:
        return replace(self.base, b=(self.bbar0,) + self.base.b[1:])


@dataclass
class SampleBatch:
    values: np.ndarray
    seed: int
    stream_id: int
    count: int
    params: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(f"# seed={self.seed} stream={self.stream_id} params_hash={params_hash(self.params)}\n")
            w = csv.writer(fh)
            w.writerow(["value"])
            for v in self.values:
                w.writerow([repr(float(v))])


# --------------------------------------------------------------------------
# the alternating subset operator

def subset_offsets(b) -> list[tuple[int, float]]:
    """[(sign, b_0 + b_{k1} + ... + b_{kp})] over all subsets of b_1..b_N."""
    b = tuple(float(x) for x in b)
    N = len(b) - 1
    if N > S_MAX:
        raise OrderTooLargeError(f"S_N needs N <= {S_MAX}")
    out = []
    for p in range(N + 1):
        for ks in itertools.combinations(range(1, N + 1), p):
            out.append(((-1) ** p, b[0] + sum(b[k] for k in ks)))
    return out


def s_operator(h: Callable, q, b):
    """(S_N h)(q|b) = sum_p (-1)^p sum_{k1<..<kp} h(q + b_0 + b_k1 + .. + b_kp)."""
    return sum(sign * h(q + off) for sign, off in subset_offsets(b))


def _L(x, a):
    return mg._lmg(x, tuple(a))


def _s_log_gamma(q, a, b):
    q = np.asarray(q, dtype=complex)
    acc = np.zeros(q.shape, dtype=complex)
    for sign, off in subset_offsets(b):
        acc = acc + sign * _L(q + off, a)
    return acc


def _log_eta(q, a, b):
    """log eta for arbitrary (M, N); no strip checks."""
    return _s_log_gamma(q, a, b) - _s_log_gamma(np.zeros(1), a, b)[0]


def _check_strip(params: BarnesBetaParams, q):
    if np.any(np.real(q) <= -params.b[0]):
        raise StripError(f"need Re(q) > -b_0 = {-params.b[0]}", bound="Re(q) > -b0")


def log_eta(params: BarnesBetaParams, q):
    """Vectorized log eta_{M,N}(q|a,b)."""
    _check_strip(params, q)
    out = _log_eta(q, params.a, params.b)
    return out if np.ndim(q) else complex(out)


def eta_mellin(params: BarnesBetaParams, q):
    """E[beta^q] = eta_{M,N}(q|a,b) for Re q > -b_0.  eta(0) = 1 exactly."""
    if np.ndim(q) == 0 and q == 0:
        return 1.0
    v = np.exp(log_eta(params, q))
    if np.ndim(q) == 0:
        return v.real if np.imag(q) == 0 else complex(v)
    return v


# --------------------------------------------------------------------------
# Levy-Khinchine forms

def _ratio_factor(t, a, b):
    """prod_j (1 - e^{-b_j t}) / prod_i (1 - e^{-a_i t}), j >= 1."""
    t = np.asarray(t, dtype=complex)
    r = np.ones_like(t)
    for bj in b[1:]:
        r = r * -np.expm1(-bj * t)
    for ai in a:
        r = r / -np.expm1(-ai * t)
    return r


def _series_radius(a):
    return min(0.5 * 2 * np.pi / max(a), 2.0) if a else 2.0


def levy_khinchine_log_eta(params: BarnesBetaParams, q) -> complex:
    """log eta from the Levy-Khinchine integral (independent of Gamma_M)."""
    _check_strip(params, q)
    q = complex(q)
    a, b = params.a, params.b
    if q == 0:
        return 0j
    if params.variant == "standard":
        def f(t):
            t = np.asarray(t, dtype=complex)
            return np.expm1(-t * q) * np.exp(-b[0] * t) * _ratio_factor(t, a, b) / t
        decay = b[0] + min(q.real, 0.0)
    else:
        c = np.prod(b[1:]) / np.prod(a)

        def f(t):
            t = np.asarray(t, dtype=complex)
            return (np.expm1(-t * q) * np.exp(-b[0] * t) * _ratio_factor(t, a, b) + q * c * np.exp(-t)) / t
        decay = min(1.0, b[0] + min(q.real, 0.0))
    radius = min(_series_radius(a), 0.5 * np.pi / max(abs(q), 1e-300) + 0.0)
    radius = min(_series_radius(a), max(radius, 0.05))
    res = integrate_semi_infinite(f, decay_rate=decay, series_radius=radius, complex_valued=True)
    return complex(res.value)


def atom_mass(params: BarnesBetaParams, method: str = "gamma") -> float:
    """P[beta = 1] for M < N.

    method="gamma" uses exp(-(S_N log G_M)(0)); "quadrature" integrates the
    Levy measure directly.
    """
    if params.variant != "standard" or params.M >= params.N:
        return 0.0
    if method == "gamma":
        return float(np.exp(-_s_log_gamma(np.zeros(1), params.a, params.b)[0].real))
    return float(np.exp(-_levy_mass(params)))


def _levy_mass(params: BarnesBetaParams) -> float:
    a, b = params.a, params.b

    def f(t):
        t = np.asarray(t, dtype=complex)
        return np.exp(-b[0] * t) * _ratio_factor(t, a, b) / t

    return float(np.real(integrate_semi_infinite(f, decay_rate=b[0], series_radius=_series_radius(a),
                                                 complex_valued=True).value))


# --------------------------------------------------------------------------
# moments

def barnes_beta_moment(params: BarnesBetaParams, k: int, sign: int = 1, axis: Optional[int] = None) -> float:
    """E[beta^{+-k}] from the finite product available when some a_i = 1."""
    if k < 0:
        raise DomainError("k must be a nonnegative integer")
    if k == 0:
        return 1.0
    a, b = params.a, params.b
    if axis is None:
        idx = [i for i, x in enumerate(a) if abs(x - 1.0) < 1e-14]
        if not idx:
            raise DomainError("moment products need a_i = 1 for some i")
        axis = idx[0]
    elif abs(a[axis] - 1.0) > 1e-14:
        raise DomainError(f"a[{axis}] != 1")
    rest = a[:axis] + a[axis + 1:]
    if sign > 0:
        ls = np.arange(k, dtype=complex)
        return float(np.exp(-np.sum(_s_log_gamma(ls, rest, b))).real)
    if k >= b[0]:
        raise DomainError(f"negative moment of order {k} needs k < b_0 = {b[0]}")
    ls = -(np.arange(k, dtype=complex) + 1)
    return float(np.exp(np.sum(_s_log_gamma(ls, rest, b))).real)


# --------------------------------------------------------------------------
# infinite product factorizations

def multiplicity(k: int, M: int) -> int:
    """(k|M): number of n in N^M with n_1 + ... + n_M = k."""
    if M == 0:
        return 1 if k == 0 else 0
    return comb(k + M - 1, M - 1)


def multiplicity_alt(k: int, M: int) -> float:
    """sum_m C(k-1, m-1) C(M, m) with generalized binomials."""
    def gbin(n, r):
        if r < 0:
            return 0.0
        out = 1.0
        for i in range(r):
            out *= (n - i) / (i + 1)
        return out
    return sum(gbin(k - 1, m - 1) * comb(M, m) for m in range(1, M + 1))


def _log_linear_tail(deltas, signs, mult: Polynomial, jmax: int = 24):
    """Expansion of sum_s sign_s log(x + delta_s) * mult(x) in powers of 1/x.

    Requires sum_s sign_s = 0.  Returns {r: c_r} for the coefficient of x^{-r}.
    """
    if abs(sum(signs)) > 0:
        raise ValueError("signs must sum to zero")
    e = np.zeros(jmax + 1, dtype=complex)
    for j in range(1, jmax + 1):
        e[j] = sum(s * (-1) ** (j + 1) * complex(d) ** j / j for d, s in zip(deltas, signs))
    p = mult.coef
    out = {}
    for r in range(-(len(p) - 1), jmax - len(p) + 2):
        out[r] = sum(p[i] * e[r + i] for i in range(len(p)) if 1 <= r + i <= jmax)
    return out


def _tail_from_expansion(exp: dict, scale=1.0):
    """c_2, c_3, ... list; checks that r <= 1 terms vanish."""
    big = max((abs(v) for v in exp.values()), default=0.0)
    for r, v in exp.items():
        if r <= 1 and abs(v) > 1e-9 * max(big, 1.0):
            raise TailBoundError(f"product terms do not decay fast enough (c_{r} = {v:.3g})")
    rmax = max(exp)
    return [exp.get(r, 0.0) * scale ** (-r) for r in range(2, rmax + 1)]


def _pow_series(n: int, delta: complex, J: int) -> dict:
    """(x + delta)^n as {power: coef}, truncated below x^{-J}."""
    out = {}
    if n >= 0:
        for i in range(n + 1):
            out[i] = comb(n, i) * delta ** (n - i)
        return out
    i = 0
    while n - i >= -J:
        out[n - i] = (-1) ** i * comb(-n + i - 1, i) * delta ** i
        i += 1
    return out


def _mul_series(u: dict, v: dict, J: int) -> dict:
    out = {}
    for pu, cu in u.items():
        for pv, cv in v.items():
            if pu + pv >= -J:
                out[pu + pv] = out.get(pu + pv, 0) + cu * cv
    return out


def _laurent_log_gamma(periods: tuple, delta: complex, J: int = 24):
    """log G_m(x + delta | periods) ~ A(x) + B(x) log x for large x > 0.

    Returns the Laurent coefficient dicts (A, B).
    """
    m = len(periods)
    e, d = mg._asymptotic_coefficients(tuple(sorted(periods)))
    logser = {-j: (-1) ** (j + 1) * delta ** j / j for j in range(1, J + 1)}
    A, B = {}, {}

    def add(dst, src, f):
        for pw, c in src.items():
            dst[pw] = dst.get(pw, 0) + f * c

    for k in range(m + 1):
        P = _pow_series(m - k, delta, J)
        H = sum(1.0 / j for j in range(1, m - k + 1))
        add(A, P, e[k] * H)
        add(A, _mul_series(P, logser, J), -e[k])
        add(B, P, -e[k])
    for idx, dk in enumerate(d):
        k = m + 1 + idx
        if m - k < -J:
            break
        add(A, _pow_series(m - k, delta, J), dk)
    return A, B


def _shintani_series(q, rest, offs, base, J=24):
    """Coefficients c_r (r = 2..J) of x^{-r} in
    sum_s sign_s [log G(q + x + off_s - base) - log G(x + off_s - base)]."""
    A, B = {}, {}
    for sign, off in offs:
        for dl, sg in ((q + off - base, sign), (off - base, -sign)):
            a_, b_ = _laurent_log_gamma(rest, dl, J)
            for pw, c in a_.items():
                A[pw] = A.get(pw, 0) + sg * c
            for pw, c in b_.items():
                B[pw] = B.get(pw, 0) + sg * c
    scale = max(1.0, max(abs(c) for c in A.values()))
    bad = [pw for pw, c in A.items() if pw >= -1 and abs(c) > 1e-9 * scale]
    bad += [pw for pw, c in B.items() if abs(c) > 1e-9 * scale]
    if bad:
        raise TailBoundError("Shintani terms do not decay like x^-2; cannot model the tail")
    return [complex(A.get(-r, 0.0)) for r in range(2, J + 1)]


def _shintani_logterm(q, a, b, axis):
    ai = a[axis]
    rest = a[:axis] + a[axis + 1:]
    offs = subset_offsets(b)

    def term(k):
        k = np.asarray(k, dtype=float)
        acc = np.zeros(k.shape, dtype=complex)
        for sign, off in offs:
            acc = acc + sign * (_L(q + k * ai + off, rest) - _L(k * ai + off, rest))
        return acc

    return term


def _shintani(params, q, tr, axis):
    a, b = params.a, params.b
    M = params.M
    ai = a[axis]
    rest = a[:axis] + a[axis + 1:]
    offs = subset_offsets(b)
    if M == 2 and params.N >= 2:
        h = rest[0]
        alphas, signs = [], []
        for sign, off in offs:
            alphas += [(q + off) / h, off / h]
            signs += [sign, -sign]
        step = ai / h

        def term(k):
            k = np.asarray(k)
            return mg.gamma_ratio_log_terms(k, alphas, signs, step)

        tail = mg.gamma_ratio_tail_coefficients(alphas, signs, step, jmax=14)
        return truncated_product(term, tr, tail_model=tail, start=0, log_term=True, strict=False)
    # generic: explicit terms at small k, Laurent series in x = k a_i + b_0
    # beyond the switch point (explicit differences of huge log G values
    # lose all accuracy there), tail from the same series
    base = b[0]
    coeffs = _shintani_series(q, rest, offs, base)
    spread = abs(q) + sum(b) + (max(rest) if rest else 0.0)
    x_switch = 20.0 * max(max(rest) if rest else 1.0, 1.0) + 4.0 * spread
    explicit = _shintani_logterm(q, a, b, axis)

    def term(k):
        k = np.asarray(k, dtype=float)
        x = k * ai + base
        out = np.zeros(k.shape, dtype=complex)
        small = x < x_switch
        if small.any():
            out[small] = explicit(k[small])
        if (~small).any():
            inv = 1.0 / x[~small]
            acc = np.zeros(inv.shape, dtype=complex)
            for c in reversed(coeffs):
                acc = (acc + c) * inv
            out[~small] = acc * inv
        return out

    tail = [c * ai ** (-r) for r, c in enumerate(coeffs, start=2)]
    res = truncated_product(term, tr, tail_model=tail, start=0, log_term=True, strict=False,
                            tail_offset=base / ai)
    # cancellation noise of the explicit differences of large log G values
    ks = np.arange(0, min(tr.max_terms, int(np.ceil(max(x_switch - base, 0) / ai)) + 1), dtype=float)
    mag = sum(np.sum(np.abs(_L(ks * ai + off, rest))) for _, off in offs)
    res.residual_bound += float(4e-16 * mag)
    return res


def _lattice_rows(q, offs, a1, bases, K1):
    """For each base: sum_{n1 >= 0} sum_s sign_s log((off_s + base + n1 a1) /
    (q + off_s + base + n1 a1)), explicit up to K1, analytic tail beyond."""
    bases = np.asarray(bases, dtype=float)
    n = np.arange(K1 + 1, dtype=float)
    acc = np.zeros(bases.shape, dtype=complex)
    b0 = offs[0][1]
    deltas, signs = [], []
    for sign, off in offs:
        x = off + bases[:, None] + n[None, :] * a1
        acc += sign * np.sum(-clog1p(q / x), axis=1)
        deltas += [(off - b0) / a1, (q + off - b0) / a1]
        signs += [sign, -sign]
    coeffs = _tail_from_expansion(_log_linear_tail(deltas, signs, Polynomial([1.0])))
    c = (b0 + bases) / a1
    for j, cj in enumerate(coeffs, start=2):
        acc += cj * hurwitz_zeta(float(j), K1 + 1.0 + c)
    return acc


def _barnes_lattice(params, q, tr):
    a, b = params.a, params.b
    offs = subset_offsets(b)
    M = params.M
    if M == 0:
        v = complex(_log_eta(np.array([q]), a, b)[0])
        return ProductResult(np.exp(v), v, 0j, 0.0, 1)
    if M == 1:
        return _shintani(params, q, tr, 0)
    if M != 2:
        raise DomainError("lattice (Barnes) factorization implemented for M <= 2")
    K1 = 256

    def term(k):
        k = np.atleast_1d(np.asarray(k, dtype=float))
        out = np.empty(k.shape, dtype=complex)
        for s0 in range(0, k.size, 512):
            out[s0:s0 + 512] = _lattice_rows(q, offs, a[0], k[s0:s0 + 512] * a[1], K1)
        return out

    return truncated_product(term, tr, tail_model=None, start=0, log_term=True, strict=False)


def _special_a1(params, q, tr):
    a, b = params.a, params.b
    if any(abs(x - 1.0) > 1e-14 for x in a):
        raise DomainError("special_a1 factorization needs all a_i = 1")
    M = params.M
    offs = subset_offsets(b)
    c = b[0]

    def term(k):
        k = np.asarray(k, dtype=float)
        mult = np.ones_like(k)
        for i in range(1, M):
            mult = mult * (k + i) / i
        acc = np.zeros(k.shape, dtype=complex)
        for sign, off in offs:
            acc = acc - sign * clog1p(q / (k + off))
        return mult * acc

    # multiplicity as a polynomial in x = k + b_0
    mpoly = Polynomial([1.0])
    for i in range(1, M):
        mpoly = mpoly * Polynomial([i - c, 1.0]) / i
    deltas, signs = [], []
    for sign, off in offs:
        deltas += [off - c, q + off - c]
        signs += [sign, -sign]
    tail = _tail_from_expansion(_log_linear_tail(deltas, signs, mpoly, jmax=24 + M))
    return truncated_product(term, tr, tail_model=tail, start=0, log_term=True, strict=False,
                             tail_offset=c)


def barnes_factorization(params: BarnesBetaParams, q, trunc: Optional[ProductTruncation] = None,
                         kind: str = "shintani", axis: int = 0) -> ProductResult:
    """eta_{M,N}(q) from one of its infinite product factorizations.

    kind : {"shintani", "barnes", "special_a1"}
        "shintani" multiplies ratios of eta_{M-1,N} shifted along a[axis];
        "barnes" multiplies the rational lattice factors (M <= 2);
        "special_a1" is the lattice product collapsed by multiplicity when all
        a_i = 1.
    """
    _check_strip(params, q)
    if params.variant != "standard":
        raise DomainError("factorizations implemented for the standard variant")
    tr = trunc or ProductTruncation()
    q = complex(q)
    if params.M == 0:
        return _barnes_lattice(params, q, tr)
    if kind == "shintani":
        res = _shintani(params, q, tr, axis)
    elif kind == "barnes":
        res = _barnes_lattice(params, q, tr)
    elif kind == "special_a1":
        res = _special_a1(params, q, tr)
    else:
        raise DomainError(f"unknown factorization {kind!r}")
    return res


# --------------------------------------------------------------------------
# identities

def functional_equation_residual(params: BarnesBetaParams, q, i: int = 0) -> float:
    a, b = params.a, params.b
    rest = a[:i] + a[i + 1:]
    r = (_log_eta(np.array([q + a[i]]), a, b)[0] - _log_eta(np.array([q]), a, b)[0]
         + _s_log_gamma(np.array([q]), rest, b)[0])
    return mg._wrap(r)


def symmetry_residuals(params: BarnesBetaParams, q, x, i: int = 0, j: int = 1) -> dict:
    """Residuals (log scale) of the five symmetry identities of eta."""
    a, b = params.a, params.b
    if not 1 <= j <= params.N:
        raise DomainError("j must index one of b_1..b_N")
    ah = a[:i] + a[i + 1:]
    bh = b[:j] + b[j + 1:]
    E = lambda qq, aa, bb: _log_eta(np.array([qq], dtype=complex), aa, bb)[0]  # noqa: E731
    out = {}
    out["shift_b0"] = E(q, a, (b[0] + x,) + b[1:]) + E(x, a, b) - E(q + x, a, b)
    out["drop_bj"] = E(q, a, b) + E(q, a, (b[0] + b[j],) + bh[1:]) - E(q, a, bh)
    out["shift_ai"] = E(q + a[i], a, b) + E(q, ah, b) - E(q, a, b) - E(a[i], a, b)
    bj_shift = b[:j] + (b[j] + a[i],) + b[j + 1:]
    out["bj_plus_ai"] = E(q, a, bj_shift) + E(b[j], ah, bh) - E(q, a, b) - E(q + b[j], ah, bh)
    out["mixed"] = E(q + a[i], a, b) + E(q, ah, bh) - E(q, a, b) - E(q + b[j], ah, bh)
    return {k: mg._wrap(v) for k, v in out.items()}


def scaling_residual(params: BarnesBetaParams, q, kappa: float) -> float:
    """eta(kappa q | kappa a, kappa b) vs. eta(q | a, b) (gamma_type picks up
    the kappa^{c q} factor)."""
    a, b = params.a, params.b
    lhs = _log_eta(np.array([kappa * q]), tuple(kappa * x for x in a), tuple(kappa * x for x in b))[0]
    rhs = _log_eta(np.array([q]), a, b)[0]
    if params.variant == "gamma_type":
        rhs += q * np.prod(b[1:]) / np.prod(a) * np.log(kappa)
    return mg._wrap(lhs - rhs)


# --------------------------------------------------------------------------
# ratios and multiple sines

def ratio_log_mellin(ratio: RatioParams, q) -> complex:
    """log E[(beta(a,b)/beta(a,bbar))^q] for -b_0 < Re q < bbar0."""
    q = complex(q)
    if not (-ratio.base.b[0] < q.real < ratio.bbar0):
        raise StripError(f"need {-ratio.base.b[0]} < Re(q) < {ratio.bbar0}", bound="-b0 < Re(q) < bbar0")
    base = ratio.base
    return complex(_log_eta(np.array([q]), base.a, base.b)[0] + _log_eta(np.array([-q]), base.a, ratio.bar.b)[0])


def ratio_mellin(ratio: RatioParams, q):
    v = np.exp(ratio_log_mellin(ratio, q))
    return v.real if np.imag(q) == 0 else v


def sine_bbar0(params: BarnesBetaParams) -> float:
    return sum(params.a) - sum(params.b)


def ratio_mellin_sine(params: BarnesBetaParams, q) -> complex:
    """The same ratio with bbar0 = |a| - sum b, from multiple sine functions:
    exp((S log S_M)(0) - (S log S_M)(q))."""
    bb = sine_bbar0(params)
    if bb <= 0:
        raise DomainError("multiple-sine form needs |a| - sum(b) > 0")
    q = complex(q)
    if not (-params.b[0] < q.real < bb):
        raise StripError(f"need {-params.b[0]} < Re(q) < {bb}", bound="-b0 < Re(q) < bbar0")
    a = params.a
    s = sum(a)
    M = params.M

    def log_sine(w):
        return (-1) ** M * _L(s - w, a) - _L(w, a)

    acc = 0j
    for sign, off in subset_offsets(params.b):
        acc += sign * (log_sine(np.array([off + 0j]))[0] - log_sine(np.array([q + off]))[0])
    return acc


# --------------------------------------------------------------------------
# sampling

def _grid_sup(fn, lo, hi, n=4000):
    t = np.concatenate([np.geomspace(lo, hi, n), np.linspace(lo, hi, n)])
    return float(np.max(fn(t)))


def _compound_poisson(rng, n, rate, density_over_exp, b0, sup, t_max):
    """n sums of Poisson(rate) many jumps with density proportional to
    density_over_exp(t) * e^{-b0 t}.  Rejection from Exp(b0)."""
    counts = rng.poisson(rate, size=n)
    total = int(counts.sum())
    jumps = np.empty(total)
    filled = 0
    proposed = 0
    while filled < total:
        m = max(1024, int(1.3 * (total - filled) * max(1.0, sup / max(rate * b0, 1e-300))))
        m = min(m, 4_000_000)
        t = rng.exponential(1.0 / b0, size=m)
        u = rng.random(m)
        acc = u * sup <= density_over_exp(t)
        proposed += m
        got = t[acc][: total - filled]
        jumps[filled:filled + got.size] = got
        filled += got.size
    idx = np.repeat(np.arange(n), counts)
    out = np.bincount(idx, weights=jumps, minlength=n) if total else np.zeros(n)
    return out, (total / proposed if proposed else 1.0)


def _sample_standard(params, n, rng):
    a, b = params.a, params.b
    b0 = b[0]
    info = {}
    if params.M < params.N:
        rate = float(_s_log_gamma(np.zeros(1), a, b)[0].real)

        def s(t):
            return np.real(_ratio_factor(t, a, b)) / t
        sup = 1.05 * _grid_sup(s, 1e-6, 60.0 / b0 + 60.0)
        neglog, acc = _compound_poisson(rng, n, rate, s, b0, sup, None)
        info.update(method="compound_poisson", jump_rate=rate, acceptance=acc)
        return np.exp(-neglog), info
    # M == N: gamma component + compound Poisson remainder
    c = float(np.prod(b[1:]) / np.prod(a)) if params.M else 1.0
    t = np.geomspace(1e-5, 400.0, 20000)
    R = np.real(_ratio_factor(t, a, b))
    g = (np.log(c) - np.log(R)) / t
    g0 = (sum(b[1:]) - sum(a)) / 2.0
    delta = 1.1 * max(0.0, float(g.max()), g0) + 1e-9
    rho = b0 + delta

    def s(t):
        t = np.asarray(t, dtype=float)
        Rt = np.real(_ratio_factor(t, a, b))
        return np.maximum(Rt - c * np.exp(-delta * t), 0.0) / t

    def rem_density(t):
        t = np.asarray(t, dtype=complex)
        return np.exp(-b0 * t) * (_ratio_factor(t, a, b) - c * np.exp(-delta * t)) / t

    rate = float(np.real(integrate_semi_infinite(rem_density, decay_rate=b0, series_radius=_series_radius(a),
                                                 complex_valued=True).value))
    neglog = rng.gamma(c, 1.0 / rho, size=n)
    acc = 1.0
    if rate > 1e-15:
        sup = 1.05 * _grid_sup(s, 1e-6, 60.0 / b0 + 60.0)
        cp, acc = _compound_poisson(rng, n, rate, s, b0, sup, None)
        neglog = neglog + cp
    info.update(method="gamma_plus_compound_poisson", gamma_shape=c, gamma_rate=rho, jump_rate=rate,
                acceptance=acc)
    return np.exp(-neglog), info


def _gil_pelaez_table(params, n_freq=2 ** 14, n_x=2 ** 12):
    a, b = params.a, params.b
    h = 1e-3
    lp = _log_eta(np.array([h, -h], dtype=complex), a, b).real
    mean = (lp[0] - lp[1]) / (2 * h)
    var = (lp[0] + lp[1]) / h ** 2
    sd = np.sqrt(max(var, 1e-12))
    lo = mean - 12 * sd - 40.0 / b[0]
    hi = mean + 14 * sd
    L = hi - lo
    du = np.pi / L
    # characteristic function eta(iu) must be negligible at the grid end
    U = du * n_freq
    u = (np.arange(n_freq) + 0.5) * du
    phi = np.exp(_log_eta(1j * u, a, b))
    if abs(phi[-1]) > 1e-10:
        raise InversionGridError(f"|eta(iU)| = {abs(phi[-1]):.2e} at U = {U:.3g}; grid too short")
    x = np.linspace(lo, hi, n_x)
    F = np.empty(n_x)
    w = phi / u
    for s in range(0, n_x, 256):
        xs = x[s:s + 256]
        F[s:s + 256] = 0.5 - du / np.pi * np.imag(np.exp(-1j * np.outer(xs, u)) @ w)
    F = np.clip(np.maximum.accumulate(F), 0.0, 1.0)
    return x, F


def _sample_gamma_type(params, n, rng):
    a, b = params.a, params.b
    if params.M == 1:
        g = rng.gamma(b[0] / a[0], 1.0, size=n)
        return (a[0] * g) ** (1.0 / a[0]), {"method": "frechet_exact"}
    x, F = _gil_pelaez_table(params)
    keep = np.concatenate([[True], np.diff(F) > 1e-15])
    xf, Ff = x[keep], F[keep]
    inv = PchipInterpolator(Ff, xf, extrapolate=False)
    u = rng.uniform(Ff[0], Ff[-1], size=n)
    return np.exp(inv(u)), {"method": "gil_pelaez", "cdf_range": (float(Ff[0]), float(Ff[-1]))}


def barnes_beta_sample(params: BarnesBetaParams, n: int, seed: int = 0, stream: int = 0) -> SampleBatch:
    """n i.i.d. draws of beta_{M,N}(a, b), reproducible from (seed, stream)."""
    if n < 1:
        raise DomainError("n must be positive")
    vals, info = sample_with_rng(params, n, make_rng(seed, stream))
    return SampleBatch(vals, seed, stream, n, params.as_dict(), info)


def sample_with_rng(params: BarnesBetaParams, n: int, rng: np.random.Generator):
    """Draw n values from an explicit generator; returns (values, info)."""
    if params.variant == "standard":
        return _sample_standard(params, n, rng)
    return _sample_gamma_type(params, n, rng)
