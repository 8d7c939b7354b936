"""Monte Carlo of discrete log-correlated Gaussian fields on the interval
and the circle, total masses of their exponentials, and moment, IPR and
maximum experiments.

Fields are drawn in fixed-size chunks; chunk c of a run uses the random
sub-stream (seed, stream, c), so results do not depend on the number of
worker threads.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

import numpy as np
import scipy.linalg as sla

from gmclab import kernels
from gmclab import laws
from gmclab.errors import DomainError, NumericalError
from gmclab.rng import make_rng, params_hash

CHUNK = 128
N_MAX = 2 ** 16
DENSE_MAX = 2 ** 13
# smallest eigenvalue of the Toeplitz matrix with entries -2 log(|i-j|/N)
# and diagonal 2 log N tends to -0.9032 as N grows; kappa = 0.5 clears it
INTERVAL_KAPPA_DEFAULT = 0.5
EULER_GAMMA = 0.5772156649015329


class CovarianceError(NumericalError):
    """Regularized covariance matrix is not positive definite."""


@dataclass(frozen=True)
class FieldConfig:
    """Grid and covariance regularization of a discrete field.

    ``kappa`` is the diagonal constant: the point variance is
    -2 log(epsilon) + 2 kappa.  ``None`` picks the geometry default
    (0 on the circle, where an extra white-noise nugget of variance 2 kappa
    is added on top of the spectral field; 0.5 on the interval).
    """
    geometry: str
    N: int
    kappa: Optional[float] = None
    seed: int = 0
    stream: int = 0
    method: str = "auto"

    def __post_init__(self):
        if self.geometry not in laws.GEOMETRIES:
            raise DomainError(f"geometry must be one of {laws.GEOMETRIES}")
        N = int(self.N)
        if N < 16 or N > N_MAX or N & (N - 1):
            raise DomainError(f"N must be a power of two in [16, {N_MAX}]")
        object.__setattr__(self, "N", N)
        if self.kappa is None:
            object.__setattr__(self, "kappa", INTERVAL_KAPPA_DEFAULT if self.geometry == "interval" else 0.0)
        object.__setattr__(self, "kappa", float(self.kappa))
        if self.kappa < 0:
            raise DomainError("kappa must be >= 0")
        if self.method not in ("auto", "dense", "circulant"):
            raise DomainError("method must be auto, dense or circulant")

    @property
    def epsilon(self) -> float:
        return 1.0 / self.N

    @property
    def grid(self) -> np.ndarray:
        """Cell midpoints: (0, 1) for the interval, (-1/2, 1/2) for the circle."""
        x = (np.arange(self.N) + 0.5) / self.N
        return x if self.geometry == "interval" else x - 0.5

    @property
    def effective_kappa(self) -> float:
        """kappa such that the realized point variance is -2 log eps + 2 kappa."""
        if self.geometry == "interval":
            return self.kappa
        return circle_point_variance(self.N) / 2 + np.log(self.epsilon) + self.kappa

    @property
    def interval_method(self) -> str:
        if self.method != "auto":
            return self.method
        return "dense" if self.N <= DENSE_MAX else "circulant"

    def as_dict(self):
        return asdict(self)


@dataclass
class FieldSample:
    grid: np.ndarray
    values: np.ndarray
    config: FieldConfig
    index: int = 0


@dataclass
class MCReport:
    """Monte Carlo estimates with jackknife standard errors."""
    kind: str
    estimates: dict
    n_samples: int
    config_hash: str
    wall_time: float
    targets: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    status: str = "rigorous"
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": self.kind, "status": self.status, "params": self.params,
                "config_hash": self.config_hash, "n_samples": self.n_samples,
                "wall_time": self.wall_time,
                "estimates": {str(k): {"value": v[0], "std_error": v[1]} for k, v in self.estimates.items()},
                "targets": {str(k): v for k, v in self.targets.items()}, "extra": self.extra}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), default=_json_default, **kw)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))


# --------------------------------------------------------------------------
# covariance and synthesis

def circle_point_variance(N: int) -> float:
    """Variance 2 sum_{k <= N/2} 1/k of the truncated spectral field."""
    return float(2 * np.sum(1.0 / np.arange(1, N // 2 + 1)))


def interval_covariance_row(N: int, kappa: float) -> np.ndarray:
    """First row of the Toeplitz covariance on the midpoint grid."""
    k = np.arange(N, dtype=float)
    row = np.empty(N)
    row[0] = 2 * np.log(N) + 2 * kappa
    # |u - v| = k/N >= eps off the diagonal, so no clamping is needed there
    row[1:] = -2 * np.log(k[1:] / N)
    return row


@lru_cache(maxsize=4)
def _interval_cholesky(N: int, kappa: float) -> np.ndarray:
    C = sla.toeplitz(interval_covariance_row(N, kappa))
    try:
        return sla.cholesky(C, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise CovarianceError(
            f"interval covariance with kappa={kappa} is not positive definite; "
            f"use kappa >= {INTERVAL_KAPPA_DEFAULT}") from exc


@lru_cache(maxsize=4)
def _interval_circulant_sqrt(N: int, kappa: float) -> np.ndarray:
    row = interval_covariance_row(N, kappa)
    # the lag N pair is at distance 1 where -2 log 1 = 0
    emb = np.concatenate([row, [0.0], row[:0:-1]])
    lam = np.fft.fft(emb).real
    if lam.min() < -1e-8 * lam.max():
        raise CovarianceError(
            f"circulant embedding has negative eigenvalue {lam.min():.3g}; increase kappa")
    return np.sqrt(np.clip(lam, 0, None) / emb.size)


def _circle_chunk(N: int, kappa: float, rows: int, rng: np.random.Generator) -> np.ndarray:
    K = N // 2
    ab = rng.standard_normal((rows, 2, K))
    amp = np.sqrt(2.0 / np.arange(1, K + 1))
    spectrum = np.zeros((rows, N // 2 + 1), dtype=complex)
    spectrum[:, 1:] = amp * (ab[:, 0] - 1j * ab[:, 1])
    # grid psi_j = -1/2 + (j + 1/2)/N: phase shift of the uniform grid
    shift = np.exp(2j * np.pi * np.arange(K + 1) * (-0.5 + 0.5 / N))
    spectrum *= shift
    # irfft doubles the interior bins but not the Nyquist one
    spectrum[:, 1:K] *= 0.5
    out = np.fft.irfft(spectrum, n=N, axis=1) * N
    if kappa > 0:
        out += np.sqrt(2 * kappa) * rng.standard_normal((rows, N))
    return out


def _interval_chunk(cfg: FieldConfig, rows: int, rng: np.random.Generator) -> np.ndarray:
    N = cfg.N
    if cfg.interval_method == "dense":
        L = _interval_cholesky(N, cfg.kappa)
        z = rng.standard_normal((rows, N))
        return z @ L.T
    s = _interval_circulant_sqrt(N, cfg.kappa)
    z = rng.standard_normal((rows, 2, 2 * N))
    w = np.fft.fft(s * (z[:, 0] + 1j * z[:, 1]), axis=1)
    return w.real[:, :N]


def _chunk(cfg: FieldConfig, c: int, rows: int) -> np.ndarray:
    rng = make_rng(cfg.seed, cfg.stream, c)
    if cfg.geometry == "circle":
        return _circle_chunk(cfg.N, cfg.kappa, rows, rng)
    return _interval_chunk(cfg, rows, rng)


def _threads(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get("GMCLAB_THREADS", "1"))
    return max(1, int(threads))


def map_chunks(cfg: FieldConfig, count: int, fn: Callable[[np.ndarray], np.ndarray],
               threads: Optional[int] = None) -> np.ndarray:
    """Apply ``fn`` to field chunks and concatenate the results in chunk order."""
    if count < 1:
        raise DomainError("count must be positive")
    sizes = [min(CHUNK, count - c * CHUNK) for c in range((count + CHUNK - 1) // CHUNK)]

    def work(c):
        return fn(_chunk(cfg, c, sizes[c]))

    nt = _threads(threads)
    if nt == 1:
        parts = [work(c) for c in range(len(sizes))]
    else:
        with ThreadPoolExecutor(nt) as ex:
            parts = list(ex.map(work, range(len(sizes))))
    return np.concatenate(parts, axis=0)


def sample_field(config: FieldConfig, count: int = 1) -> Iterator[FieldSample]:
    """Yield ``count`` independent fields, reproducible from (seed, stream)."""
    grid = config.grid
    done = 0
    c = 0
    while done < count:
        rows = min(CHUNK, count - done)
        block = _chunk(config, c, rows)
        for r in range(rows):
            yield FieldSample(grid, block[r], config, done + r)
        done += rows
        c += 1


def field_array(config: FieldConfig, count: int, threads: Optional[int] = None) -> np.ndarray:
    """``count`` fields stacked into a (count, N) array."""
    return map_chunks(config, count, lambda b: b, threads)


# --------------------------------------------------------------------------
# total mass

def log_potential(config: FieldConfig, lambda1: float = 0.0, lambda2: float = 0.0) -> np.ndarray:
    x = config.grid
    if config.geometry == "interval":
        return lambda1 * np.log(x) + lambda2 * np.log1p(-x)
    if lambda1 != lambda2:
        raise DomainError("the circle total mass is defined for lambda1 = lambda2")
    # |1 + e^{2 pi i x}| = 2 |cos(pi x)|
    return 2 * lambda1 * np.log(2 * np.abs(np.cos(np.pi * x)))


def _mass_logw(config: FieldConfig, beta: float, lambda1, lambda2) -> np.ndarray:
    if not 0 <= beta < 1:
        raise DomainError("need 0 <= beta < 1")
    eps = config.epsilon
    # eps^{beta^2} e^{-beta^2 kappa}: exact normalization for point variance
    # -2 log eps + 2 kappa (reduces to eps^{beta^2} when kappa = 0)
    norm = beta * beta * (np.log(eps) - config.effective_kappa)
    return log_potential(config, lambda1, lambda2) + np.log(eps) + norm


def total_mass(field: FieldSample | np.ndarray, beta: float, lambda1: float = 0.0, lambda2: float = 0.0,
               config: Optional[FieldConfig] = None):
    """Total mass of exp(beta V) against the potential on the grid.

    Accepts a FieldSample or a (count, N) array together with ``config``.
    """
    if isinstance(field, FieldSample):
        cfg, vals = field.config, field.values[None, :]
    else:
        if config is None:
            raise DomainError("config is required for raw arrays")
        cfg, vals = config, np.atleast_2d(field)
    out = kernels.weighted_expsum(vals, float(beta), _mass_logw(cfg, beta, lambda1, lambda2))
    return float(out[0]) if isinstance(field, FieldSample) or np.ndim(field) == 1 else out


def masses(config: FieldConfig, beta: float, lambda1: float, lambda2: float, n: int,
           threads: Optional[int] = None) -> np.ndarray:
    logw = _mass_logw(config, beta, lambda1, lambda2)
    return map_chunks(config, n, lambda b: kernels.weighted_expsum(b, float(beta), logw), threads)


# --------------------------------------------------------------------------
# statistics

def jackknife(x: np.ndarray, stat: Callable[[np.ndarray], float], blocks: int = 100) -> tuple[float, float]:
    """Delete-one-block jackknife estimate and standard error of stat(x)."""
    x = np.asarray(x)
    n = x.shape[0]
    if n < 2:
        return float(stat(x)), 0.0
    g = min(blocks, n)
    edges = np.linspace(0, n, g + 1).astype(int)
    full = stat(x)
    loo = np.array([stat(np.concatenate([x[:edges[i]], x[edges[i + 1]:]], axis=0)) for i in range(g)])
    mean_loo = loo.mean()
    se = np.sqrt((g - 1) / g * np.sum((loo - mean_loo) ** 2))
    est = g * full - (g - 1) * mean_loo
    return float(est), float(se)


def _config_hash(cfg: FieldConfig, **extra) -> str:
    return params_hash({**cfg.as_dict(), **extra})


# --------------------------------------------------------------------------
# experiments

def moment_experiment(config: FieldConfig, beta: float, lambda1: float = 0.0, lambda2: float = 0.0,
                      orders=(1, 2), n_samples: int = 1000, threads: Optional[int] = None,
                      keep_masses: bool = False) -> MCReport:
    """Integer moments of the total mass against the exact Gamma products."""
    t0 = time.time()
    if beta <= 0:
        tau = np.inf
    else:
        tau = 1 / (beta * beta)
    for k in orders:
        if k < 0 or int(k) != k:
            raise DomainError("orders must be nonnegative integers")
        if k >= tau:
            raise DomainError(f"order {k} >= 1/beta^2 = {tau}: the moment diverges")
    m = masses(config, beta, lambda1, lambda2, n_samples, threads)
    est, targets = {}, {}
    for k in orders:
        k = int(k)
        if k == 0:
            est[k] = (1.0, 0.0)
        else:
            est[k] = jackknife(m, lambda x, k=k: float(np.mean(x ** k)))
        if np.isfinite(tau) and k > 0:
            p = laws.GMCLawParams(config.geometry, tau, lambda1, lambda2)
            targets[k] = laws.moment_product(k, p)
        elif k > 0:
            targets[k] = float(np.exp(k * laws.log_phibar(config.geometry, lambda1, lambda2)))
        else:
            targets[k] = 1.0
    extra = {"masses": m} if keep_masses else {}
    return MCReport("moments", est, n_samples, _config_hash(config, beta=beta, l1=lambda1, l2=lambda2),
                    time.time() - t0, targets,
                    {"config": config.as_dict(), "beta": beta, "lambda1": lambda1, "lambda2": lambda2},
                    "rigorous (integer moments are theorems)", extra)


def _partition_stats(block: np.ndarray, beta: float, n: int) -> np.ndarray:
    # log Z(n beta) - n log Z(beta), with the maximum factored out
    top = block.max(axis=1, keepdims=True)
    zn = kernels.weighted_expsum(block - top, n * beta, 0.0)
    z1 = kernels.weighted_expsum(block - top, beta, 0.0)
    return zn / z1 ** n


def ipr_experiment(beta: float, n: int = 2, Ns=(2 ** 8, 2 ** 9, 2 ** 10, 2 ** 11, 2 ** 12),
                   n_samples: int = 2000, seed: int = 0, stream: int = 0,
                   threads: Optional[int] = None) -> MCReport:
    """E[Z(n beta)/Z(beta)^n] on the circle field across grid sizes, with
    the fitted log-log slope against the predicted exponent."""
    t0 = time.time()
    b2 = beta * beta
    if beta < 0 or (b2 > 0 and not n < (1 + b2) / (2 * b2)):
        raise DomainError("need n < (1 + beta^2)/(2 beta^2)")
    est, targets = {}, {}
    logN, logR, w = [], [], []
    for N in Ns:
        cfg = FieldConfig("circle", N, seed=seed, stream=stream)
        r = map_chunks(cfg, n_samples, lambda b: _partition_stats(b, beta, n), threads)
        v, se = jackknife(r, lambda x: float(np.mean(x)))
        est[N] = (v, se)
        targets[N] = laws.ipr_ratio(n, beta, N)
        logN.append(np.log(N))
        logR.append(np.log(v))
        w.append(v / se if se > 0 else np.nan)
    # weight by 1 / SE of log v; zero-variance runs (beta = 0) get equal weights
    w = np.asarray(w)
    w = np.ones_like(w) if not np.all(np.isfinite(w)) else w / w.max()
    coef = np.polyfit(logN, logR, 1, w=w)
    slope, icpt = float(coef[0]), float(coef[1])
    extra = {"slope": slope, "predicted_slope": laws.ipr_exponent(n, beta),
             "prefactor": float(np.exp(icpt)),
             "predicted_prefactor": laws.ipr_prefactor(n, beta) if beta > 0 else 1.0}
    return MCReport("ipr", est, n_samples, params_hash({"beta": beta, "n": n, "Ns": list(Ns), "seed": seed}),
                    time.time() - t0, targets, {"beta": beta, "n": n, "Ns": list(Ns), "seed": seed, "stream": stream},
                    "conjecture-dependent: the large-N form of the prediction is not a theorem", extra)


def maximum_experiment(geometry: str = "circle", Ns=(2 ** 8, 2 ** 9, 2 ** 10, 2 ** 11, 2 ** 12), n_samples: int = 500,
                       seed: int = 0, stream: int = 0, threads: Optional[int] = None) -> MCReport:
    """Demo: mean and quantiles of max V against 2 log N - (3/2) log log N.

    Not an acceptance check; the large-N behaviour is conjectural.
    """
    t0 = time.time()
    est, quant = {}, {}
    for N in Ns:
        cfg = FieldConfig(geometry, N, kappa=None, seed=seed, stream=stream)
        mx = map_chunks(cfg, n_samples, lambda b: b.max(axis=1), threads)
        est[N] = jackknife(mx, lambda x: float(np.mean(x)))
        quant[N] = np.quantile(mx, [0.1, 0.5, 0.9]).tolist()
    logN = np.log(np.asarray(Ns, dtype=float))
    means = np.array([est[N][0] for N in Ns])
    # slope with the loglog coefficient held at its reference value
    a_fixed = float(np.polyfit(logN, means + 1.5 * np.log(logN), 1)[0])
    a = b = float("nan")
    if len(Ns) >= 4:
        A = np.stack([logN, np.log(logN), np.ones_like(logN)], axis=1)
        a, b, _ = np.linalg.lstsq(A, means, rcond=None)[0]
    diffs = np.diff(means).tolist()
    extra = {"fit_logN": float(a), "fit_loglogN": float(b), "fit_logN_fixed_loglog": a_fixed,
             "reference_logN": 2.0, "reference_loglogN": -1.5,
             "doubling_increments": diffs, "reference_increment": 2 * np.log(2), "quantiles": quant}
    return MCReport("maximum", est, n_samples, params_hash({"geometry": geometry, "Ns": list(Ns), "seed": seed}),
                    time.time() - t0, {}, {"geometry": geometry, "Ns": list(Ns), "seed": seed, "stream": stream},
                    "demo only: conjectural, not an acceptance criterion", extra)
