# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: complex log Gamma, log Gamma_2 and the GMC
exponential sum.  Mirrors ``_kernels_py`` exactly."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, atan2, hypot, exp, ceil, sqrt, fabs, copysign, ldexp, M_PI, M_LN2 as LOG2

cnp.import_array()

cdef double HALF_LOG_2PI = 0.9189385332046727418
cdef double EULER_GAMMA = 0.57721566490153286061
cdef double SHIFT_TO = 10.0
cdef double NEAR_RADIUS = 0.55

cdef double[9] STIRLING = [
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0,
    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0, 43867.0 / 244188.0]

from gmclab._kernels_py import _ZETA_M1 as _ZM1_PY
cdef double[39] ZETA_M1
for _i in range(39):
    ZETA_M1[_i] = _ZM1_PY[_i]


cdef inline double complex clog_(double complex z) nogil:
    cdef double r2 = z.real * z.real + z.imag * z.imag
    if 1e-300 < r2 < 1e300:
        return 0.5 * log(r2) + 1j * atan2(z.imag, z.real)
    if r2 <= 1e-300:
        # power-of-two rescaling is exact, even for subnormal parts
        return log(hypot(ldexp(z.real, 600), ldexp(z.imag, 600))) - 600 * LOG2 + 1j * atan2(z.imag, z.real)
    return log(hypot(z.real, z.imag)) + 1j * atan2(z.imag, z.real)


cdef inline double complex clog1p_(double complex z) nogil:
    # adequate for |z| <= 0.55 where it is used
    cdef double complex s = 0
    cdef double complex p = z
    cdef int k
    if hypot(z.real, z.imag) > 0.25:
        return clog_(1.0 + z)
    for k in range(1, 40):
        if k % 2 == 1:
            s += p / k
        else:
            s -= p / k
        p *= z
    return s


cdef double complex near_one_series(double complex x) nogil:
    cdef double complex out = 0
    cdef double complex mx = -x
    cdef double complex p = mx
    cdef int k
    for k in range(2, 41):
        p = p * mx
        out += ZETA_M1[k - 2] * p / k
    return out


cdef double complex shift_log(double complex z, int n) nogil:
    # sum_{k<n} log(z + k) on the principal branch via one running product.
    # For Im z >= 0 each factor rotates by an angle in [0, pi), so the
    # product wraps past -pi exactly when Im flips from >= 0 to < 0.
    cdef double complex P = 1.0, acc = 0, f
    cdef double sgn, im_old, im_new
    cdef int k, k0 = 0, wraps = 0, neg = 0
    if n == 0:
        return 0
    if fabs(z.real) + fabs(z.imag) < 1e-200:
        # a tiny first factor would leave the product subnormal
        acc = clog_(z)
        k0 = 1
        if z.real < 0:
            neg = 1
    if z.imag == 0.0:
        for k in range(k0, n):
            f = z + k
            if f.real < 0:
                neg += 1
            P = P * fabs(f.real)
            if fabs(P.real) > 1e250:
                acc += log(P.real)
                P = 1.0
        return log(P.real) + acc.real + 1j * copysign(M_PI, z.imag) * neg
    sgn = 1.0 if z.imag > 0 else -1.0
    for k in range(k0, n):
        im_old = sgn * P.imag
        P = P * (z + k)
        im_new = sgn * P.imag
        if im_old >= 0 and im_new < 0:
            wraps += 1
        if fabs(P.real) + fabs(P.imag) > 1e250:
            acc += clog_(P) + 2j * M_PI * sgn * wraps
            wraps = 0
            P = 1.0
    return acc + clog_(P) + 2j * M_PI * sgn * wraps


cdef double complex lgam(double complex z) nogil:
    cdef double complex x, w, acc, inv, inv2, s
    cdef int n, k
    x = z - 1.0
    if x.real * x.real + x.imag * x.imag <= NEAR_RADIUS * NEAR_RADIUS:
        return near_one_series(x) - EULER_GAMMA * x + x - clog1p_(x)
    x = z - 2.0
    if x.real * x.real + x.imag * x.imag <= NEAR_RADIUS * NEAR_RADIUS:
        return near_one_series(x) - EULER_GAMMA * x + x
    if z.real > 0.0 and z.real * z.real + z.imag * z.imag >= SHIFT_TO * SHIFT_TO:
        n = 0
    else:
        n = <int>ceil(SHIFT_TO - z.real) if SHIFT_TO - z.real > 0 else 0
    acc = shift_log(z, n)
    w = z + n
    inv = 1.0 / w
    inv2 = inv * inv
    s = 0
    for k in range(8, -1, -1):
        s = s * inv2 + STIRLING[k]
    s = s * inv
    return (w - 0.5) * clog_(w) - w + HALF_LOG_2PI + s - acc


def loggamma(z):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(
        np.asarray(z, dtype=np.complex128).ravel())
    cdef Py_ssize_t i, n = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    with nogil:
        for i in range(n):
            out[i] = lgam(zz[i])
    return out.reshape(np.shape(z))


def log_gamma2(w, double a_small, double a_big, e, d, double radius):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ww = np.ascontiguousarray(
        np.asarray(w, dtype=np.complex128).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ee = np.ascontiguousarray(e, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dd = np.ascontiguousarray(d, dtype=np.float64)
    cdef Py_ssize_t i, n = ww.shape[0], nd = dd.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double target = radius * a_big, need, alt, log_as = log(a_small)
    cdef long j, nshift
    cdef double complex z, acc, x, W, logW, res, inv, p, tail
    with nogil:
        for i in range(n):
            z = ww[i]
            need = target * target - z.imag * z.imag
            need = (sqrt(need) if need > 0 else 0.0) - z.real
            alt = -z.real + 0.5 * a_big
            if alt > need:
                need = alt
            nshift = <long>ceil(need / a_big) if need > 0 else 0
            acc = 0
            for j in range(nshift):
                x = (z + j * a_big) / a_small
                acc += (x - 0.5) * log_as + lgam(x) - HALF_LOG_2PI
            W = z + nshift * a_big
            logW = clog_(W)
            res = ee[0] * W * W * (1.5 - logW) + ee[1] * W * (1.0 - logW) - ee[2] * logW
            inv = 1.0 / W
            p = 1.0
            tail = 0
            for j in range(nd):
                p = p * inv
                tail += dd[j] * p
            out[i] = acc + res + tail
    return out.reshape(np.shape(w))


def weighted_expsum(values, double beta, logw):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lw = np.ascontiguousarray(
        np.broadcast_to(np.asarray(logw, dtype=np.float64), (v.shape[1],)))
    cdef Py_ssize_t i, j, n = v.shape[0], m = v.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double s
    with nogil:
        for i in range(n):
            s = 0.0
            for j in range(m):
                s += exp(beta * v[i, j] + lw[j])
            out[i] = s
    return out
