"""Pure numpy versions of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` module; used when
the extension is not built (or forced via ``GMCLAB_PURE=1``).
"""
import numpy as np

HALF_LOG_2PI = 0.9189385332046727418
EULER_GAMMA = 0.57721566490153286061

# B_2k / (2k (2k-1)), k = 1..9, for the Stirling tail of log Gamma
_STIRLING = np.array([
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
])

# zeta(k) - 1 for k = 2..40
_ZETA_M1 = np.array([
    0.64493406684822643647, 0.20205690315959428540, 0.08232323371113819152,
    0.03692775514336992633, 0.01734306198444913971, 0.00834927738192282684,
    0.00407735619794433938, 0.00200839282608221442, 0.00099457512781808534,
    0.00049418860411946456, 0.00024608655330804830, 0.00012271334757848915,
    0.00006124813505870483, 0.00003058823630702049, 0.00001528225940865187,
    7.6371976378997622736e-6, 3.8172932649998398565e-6, 1.9082127165539389256e-6,
    9.5396203387279611315e-7, 4.7693298678780646311e-7, 2.3845050272773299000e-7,
    1.1921992596531107307e-7, 5.9608189051259479612e-8, 2.9803503514652280186e-8,
    1.4901554828365041235e-8, 7.4507117898354294920e-9, 3.7253340247884570548e-9,
    1.8626597235130490065e-9, 9.3132743241966818287e-10, 4.6566290650337840730e-10,
    2.3283118336765054920e-10, 1.1641550172700519776e-10, 5.8207720879027008892e-11,
    2.9103850444970996869e-11, 1.4551921891041984236e-11, 7.2759598350574810145e-12,
    3.6379795473786511902e-12, 1.8189896503070659476e-12, 9.0949478402638892825e-13,
])

_SHIFT_TO = 10.0
_NEAR_RADIUS = 0.55


def clog1p(z):
    """log(1 + z) accurate for small complex z (numpy's complex log1p is not)."""
    z = np.asarray(z, dtype=np.complex128)
    u = 1.0 + z
    d = u - 1.0
    safe = np.where(d == 0, 1.0, d)
    return np.where(d == 0, z, np.log(u) * (z / safe))


def _near_one_series(x):
    # log Gamma(1+x) + gamma*x - x + log1p(x) = sum_k (zeta(k)-1)(-x)^k/k
    out = np.zeros_like(x)
    p = np.ones_like(x)
    mx = -x
    for k in range(2, 2 + _ZETA_M1.size):
        if k == 2:
            p = mx * mx
        else:
            p = p * mx
        out = out + _ZETA_M1[k - 2] * p / k
    return out


def loggamma(z):
    """Principal-branch log Gamma for a complex128 array (no pole checks)."""
    z = np.asarray(z, dtype=np.complex128)
    shape = z.shape
    z = z.ravel()
    out = np.empty_like(z)

    x1 = z - 1.0
    x2 = z - 2.0
    near1 = np.abs(x1) <= _NEAR_RADIUS
    near2 = (np.abs(x2) <= _NEAR_RADIUS) & ~near1
    if near1.any():
        x = x1[near1]
        out[near1] = _near_one_series(x) - EULER_GAMMA * x + x - clog1p(x)
    if near2.any():
        x = x2[near2]
        out[near2] = _near_one_series(x) - EULER_GAMMA * x + x

    rest = ~(near1 | near2)
    if rest.any():
        w = z[rest]
        big = (np.abs(w) >= _SHIFT_TO) & (w.real > 0.0)
        nshift = np.where(big, 0, np.ceil(np.maximum(_SHIFT_TO - w.real, 0.0))).astype(np.int64)
        acc = np.zeros_like(w)
        for k in range(int(nshift.max(initial=0))):
            m = nshift > k
            acc[m] += np.log(w[m] + k)
        W = w + nshift
        inv = 1.0 / W
        inv2 = inv * inv
        s = np.zeros_like(W)
        for c in _STIRLING[::-1]:
            s = s * inv2 + c
        s = s * inv
        out[rest] = (W - 0.5) * np.log(W) - W + HALF_LOG_2PI + s - acc
    return out.reshape(shape)


def log_gamma2(w, a_small, a_big, e, d, radius):
    """Modern-normalization log Gamma_2(w | a_small, a_big) for an array w.

    Functional-equation shifts by ``a_big`` followed by the large-argument
    expansion.  ``e`` holds the three polynomial/log coefficients and ``d`` the
    inverse-power coefficients (both precomputed from multiple Bernoulli
    numbers, see ``multigamma._asymptotic_coefficients``).
    """
    w = np.asarray(w, dtype=np.complex128)
    shape = w.shape
    w = w.ravel()
    target = radius * a_big
    # smallest n with |w + n a_big| >= target and Re > 0
    need = np.sqrt(np.maximum(target * target - w.imag * w.imag, 0.0)) - w.real
    need = np.maximum(need, -w.real + 0.5 * a_big)
    nshift = np.maximum(np.ceil(need / a_big), 0.0).astype(np.int64)

    acc = np.zeros_like(w)
    log_as = np.log(a_small)
    nmax = int(nshift.max(initial=0))
    for j in range(nmax):
        m = nshift > j
        x = (w[m] + j * a_big) / a_small
        acc[m] += (x - 0.5) * log_as + loggamma(x) - HALF_LOG_2PI
    W = w + nshift * a_big
    logW = np.log(W)
    # sum_k e_k W^{2-k} (H_{2-k} - log W)
    res = e[0] * W * W * (1.5 - logW) + e[1] * W * (1.0 - logW) - e[2] * logW
    inv = 1.0 / W
    p = np.ones_like(W)
    tail = np.zeros_like(W)
    for dk in d:
        p = p * inv
        tail = tail + dk * p
    return (acc + res + tail).reshape(shape)


def weighted_expsum(values, beta, logw):
    """Row sums of exp(beta * values + logw) for a 2-D field array."""
    values = np.asarray(values, dtype=np.float64)
    out = np.empty(values.shape[0])
    # chunk rows to keep the temporary small
    step = max(1, 2_000_000 // max(values.shape[1], 1))
    for i in range(0, values.shape[0], step):
        blk = values[i:i + step]
        out[i:i + step] = np.exp(beta * blk + logw).sum(axis=1)
    return out
