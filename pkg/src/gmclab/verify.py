"""Named verification suites.

Every acceptance criterion is a function ``criterion_<k>`` returning a
:class:`CriterionResult`; suites group criteria (optionally restricted to
one geometry) together with extra identity checks.  The test-suite and the
``verify`` CLI command call exactly these functions.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from gmclab import barnes_beta as bb
from gmclab import laws
from gmclab import multigamma as mg
from gmclab import sim
from gmclab.errors import StripError
from gmclab.special import ln_gamma


@dataclass
class Check:
    """One comparison.  ``residual <= tol`` passes."""
    name: str
    value: float
    target: float
    residual: float
    tol: float
    unit: str = "abs"

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)

    def as_dict(self):
        return {"name": self.name, "value": self.value, "target": self.target,
                "residual": self.residual, "tol": self.tol, "unit": self.unit, "passed": self.passed}


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    runtime: float = 0.0
    runtime_limit: Optional[float] = None
    note: str = ""

    @property
    def within_time(self) -> bool:
        return self.runtime_limit is None or self.runtime < self.runtime_limit

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks) and self.within_time

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks if c.unit != "se"), default=0.0)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        t = f"{self.runtime:.2f}s" + (f"/{self.runtime_limit:g}s" if self.runtime_limit else "")
        return (f"[{tag}] criterion {self.number:>2}: {self.title} "
                f"({len(self.checks) - len(self.failures())}/{len(self.checks)} checks, "
                f"max residual {self.max_residual:.3g}, {t})")

    def as_dict(self):
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "runtime": self.runtime, "runtime_limit": self.runtime_limit, "note": self.note,
                "max_residual": self.max_residual, "checks": [c.as_dict() for c in self.checks]}


def _rel(value, target, tol, name) -> Check:
    value, target = complex(value), complex(target)
    r = abs(value - target) / abs(target)
    return Check(name, _num(value), _num(target), float(r), tol, "rel")


def _abs(residual, tol, name, value=np.nan, target=np.nan) -> Check:
    return Check(name, _num(value), _num(target), float(residual), tol, "abs")


def _se(mean, se, target, k, name) -> Check:
    """|mean - target| measured in standard errors."""
    z = abs(mean - target) / se if se > 0 else (0.0 if mean == target else np.inf)
    return Check(name, float(mean), float(target), float(z), float(k), "se")


def _num(x):
    x = complex(x)
    return x.real if x.imag == 0 else x


def _timed(number, title, limit=None):
    def deco(fn):
        def run(*args, **kw) -> CriterionResult:
            res = CriterionResult(number, title, runtime_limit=limit)
            t0 = time.perf_counter()
            fn(res, *args, **kw)
            res.runtime = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.number = number
        return run
    return deco


GEOMS = ("interval", "circle")
LAMBDA = {"interval": (0.3, 0.7), "circle": (0.4, 0.4)}


# --------------------------------------------------------------------------
# criteria

@_timed(1, "Dyson closed form on the circle", limit=1.0)
def criterion_1(res: CriterionResult, taus=(1.5, 2.0, 5.0)):
    for tau in taus:
        p = laws.GMCLawParams("circle", tau, 0.0, 0.0)
        for q in np.linspace(-5.0, tau - 0.1, 11):
            v = laws.morris_mellin(q, p).value
            t = np.exp(float(ln_gamma(1 - q / tau)) - q * float(ln_gamma(1 - 1 / tau)))
            res.checks.append(_rel(v, t, 1e-10, f"tau={tau} q={q:.4g}"))


@_timed(2, "positive integer moments")
def criterion_2(res: CriterionResult, tau=5.5, geometries=GEOMS):
    for g in geometries:
        p = laws.GMCLawParams(g, tau, *LAMBDA[g])
        fn = laws.selberg_mellin if g == "interval" else laws.morris_mellin
        for n in range(1, int(np.floor(tau))):
            res.checks.append(_rel(fn(n, p).value, laws.moment_product(n, p), 1e-8, f"{g} n={n}"))


@_timed(3, "negative integer moments")
def criterion_3(res: CriterionResult, tau=5.5, geometries=GEOMS):
    for g in geometries:
        p = laws.GMCLawParams(g, tau, *LAMBDA[g])
        for n in (1, 2, 3):
            res.checks.append(_rel(laws.mellin(-n, p).value, laws.negative_moment_product(n, p), 1e-8,
                                   f"{g} q=-{n}"))
    if "circle" in geometries:
        p = laws.GMCLawParams("circle", 2.0, 0.0, 0.0)
        res.checks.append(_rel(laws.morris_mellin(-1, p).value, np.pi / 2, 1e-8, "circle tau=2 q=-1 (pi/2)"))


@_timed(4, "representation web", limit=30.0)
def criterion_4(res: CriterionResult, geometries=GEOMS, n_points=10):
    grid = [(2.5, 0.7), (2.5, -1.5), (3.7, 1.9), (3.7, -2.2), (1.6, 0.4),
            (1.6, -0.9), (5.0, 3.1), (5.0, -4.0), (2.0, 1.2), (8.0, -0.5)][:n_points]
    for g in geometries:
        for tau, q in grid:
            p = laws.GMCLawParams(g, tau, *LAMBDA[g])
            ref = laws.mellin(q, p).log_value
            prod = laws.mellin(q, p, rep="infinite_product")
            bound = prod.error_estimate / abs(prod.value)
            res.checks.append(_abs(abs(prod.log_value - ref), max(bound, 1e-13), f"{g} product tau={tau} q={q}",
                                   prod.log_value, ref))
            res.checks.append(_abs(bound, 1e-5, f"{g} product tail bound tau={tau} q={q}"))
            lk = laws.mellin(q, p, rep="levy_khinchine").log_value
            res.checks.append(_abs(abs(lk - ref), 1e-6, f"{g} Levy-Khinchine tau={tau} q={q}", lk, ref))


@_timed(5, "involution invariance")
def criterion_5(res: CriterionResult):
    pts = {
        "interval": [(0.7, 2.5, 0.3, 0.7), (-1.3, 3.0, 0.0, 0.0), (0.4, 1.7, 0.2, 0.5),
                     (-2.5, 4.2, 1.0, 0.1), (0.9, 2.2, 0.0, 0.4)],
        "circle": [(0.7, 2.5, 0.4, 0.4), (-1.3, 3.0, 0.0, 0.0), (0.4, 1.7, 0.2, 0.5),
                   (-2.5, 4.2, 1.0, 0.1), (0.9, 2.2, 0.3, 0.3)],
        "complex": [(0.5, 2.0, -0.8, -0.8), (1.9, 2.5, -0.5, -0.3), (2.3, 3.0, -0.4, -0.4),
                    (1.4, 1.5, -0.2, -0.6), (0.9, 2.2, -0.6, -0.7)],
    }
    for kind, rows in pts.items():
        for q, tau, l1, l2 in rows:
            r = laws.involution_check(kind, q, tau, l1, l2)
            res.checks.append(_abs(r, 1e-8, f"{kind} q={q} tau={tau} l=({l1},{l2})"))
        r1 = laws.involution_check(kind, 0.3, 1.0, -0.2 if kind == "complex" else 0.2, 0.1)
        res.checks.append(Check(f"{kind} tau=1 fixed point", r1, 0.0, r1, 0.0))


def _exact_integer_log(q: int, p: laws.GMCLawParams) -> float:
    if q > 0:
        return float(np.log(laws.moment_product(q, p)))
    return float(np.log(laws.negative_moment_product(-q, p)))


@_timed(6, "intermittency expansion error scaling")
def criterion_6(res: CriterionResult, geometries=GEOMS, qs=(4, -4), p_max=6, taus=(50.0, 100.0)):
    """Error of the order-p_max series must scale like mu^{p_max+1}.

    Exact values come from the finite Gamma products at integer q.
    """
    expected = (taus[0] / taus[1]) ** (p_max + 1)
    for g in geometries:
        for q in qs:
            errs = []
            for tau in taus:
                p = laws.GMCLawParams(g, tau, *LAMBDA[g])
                a, _ = laws._log_mellin_asymptotic(q, p, p_max)
                errs.append(abs(a.real - _exact_integer_log(q, p)))
            ratio = errs[1] / errs[0]
            # within a factor 2 either way: |log2(ratio/expected)| <= 1
            res.checks.append(Check(f"{g} q={q} error ratio", ratio, expected,
                                    abs(np.log2(ratio / expected)), 1.0, "log2"))


@_timed(7, "Barnes beta identities and sampling")
def criterion_7(res: CriterionResult, n_samples=10 ** 6, seed=7, rng_seed=1234):
    rng = np.random.default_rng(rng_seed)
    # alternating subset sums of polynomials
    for N in range(1, 6):
        b = tuple(rng.uniform(0.2, 2.0, N + 1))
        for q in (0.0, 0.37, -0.11 + 0.5j):
            scale = max(1.0, abs(q) + sum(b)) ** N
            for k in range(N):
                v = complex(bb.s_operator(lambda x, k=k: x ** k, q, b))
                res.checks.append(_abs(abs(v) / scale, 1e-12, f"S_{N} x^{k} q={q}", v, 0.0))
            v = complex(bb.s_operator(lambda x: x ** N, q, b))
            target = (-1) ** N * np.prod([float(i) for i in range(1, N + 1)]) * np.prod(b[1:])
            res.checks.append(_abs(abs(v - target) / scale, 1e-12, f"S_{N} x^{N} q={q}", v, target))
    # functional equation and symmetries
    cases = [bb.BarnesBetaParams(2, 2, (1.0, 2.0), (1.0, 1.0, 1.0)),
             bb.BarnesBetaParams(2, 3, (1.0, 1.7), (0.8, 0.5, 0.3, 0.9)),
             bb.BarnesBetaParams(1, 2, (1.3,), (0.6, 0.4, 1.1)),
             bb.BarnesBetaParams(3, 2, (1.0, 1.5, 0.7), (0.9, 0.6, 0.4))]
    for p in cases:
        for q in (0.4, 1.3 + 0.2j):
            for i in range(p.M):
                res.checks.append(_abs(bb.functional_equation_residual(p, q, i), 1e-9,
                                       f"functional eq M={p.M} N={p.N} i={i} q={q}"))
            if p.M >= 1:
                for name, r in bb.symmetry_residuals(p, q, 0.35, 0, 1).items():
                    res.checks.append(_abs(r, 1e-9, f"symmetry {name} M={p.M} N={p.N} q={q}"))
    # Monte Carlo moments
    p = bb.BarnesBetaParams(2, 2, (1.0, 2.0), (1.0, 1.0, 1.0))
    x = bb.barnes_beta_sample(p, n_samples, seed=seed).values
    for k in (1, 2, 3):
        xk = x ** k
        res.checks.append(_se(xk.mean(), xk.std(ddof=1) / np.sqrt(x.size), bb.eta_mellin(p, k), 4.0,
                              f"beta22 MC moment k={k}"))
    p0 = bb.BarnesBetaParams(0, 2, (), (1.0, 0.5, 0.7))
    y = bb.barnes_beta_sample(p0, n_samples, seed=seed, stream=1).values
    frac = float(np.mean(y == 1.0))
    atom = bb.atom_mass(p0)
    res.checks.append(_se(frac, np.sqrt(atom * (1 - atom) / y.size), atom, 3.0, "beta02 atom mass"))


@_timed(8, "law sampling through the product decomposition", limit=120.0)
def criterion_8(res: CriterionResult, n_samples=10 ** 6, seed=8):
    p = laws.GMCLawParams("interval", 5.0, 0.0, 0.0)
    m = laws.law_sample(p, n_samples, seed=seed).values
    for k, target in ((1, 1.0), (2, 25.0 / 12.0)):
        mk = m ** k
        res.checks.append(_se(mk.mean(), mk.std(ddof=1) / np.sqrt(m.size), target, 4.0, f"E[M^{k}]"))
    for g, tau, l1, l2 in (("interval", 5.0, 0.0, 0.0), ("interval", 3.3, 0.2, 0.6),
                           ("circle", 4.0, 0.0, 0.0), ("circle", 2.7, 0.5, 0.5)):
        pp = laws.GMCLawParams(g, tau, l1, l2)
        for q in (0.7, -1.4, 1.9 + 0.3j):
            r = abs(laws.decomposition_log_mellin(q, pp) - laws.log_mellin(q, pp))
            res.checks.append(_abs(r, 1e-8, f"decomposition {g} tau={tau} q={q}"))


@_timed(9, "GMC simulation moments", limit=600.0)
def criterion_9(res: CriterionResult, N=2 ** 12, n_samples=10 ** 4, seed=9, threads=None,
                geometries=GEOMS):
    if "interval" in geometries:
        cfg = sim.FieldConfig("interval", N, seed=seed)
        r = sim.moment_experiment(cfg, np.sqrt(0.2), orders=(1, 2), n_samples=n_samples, threads=threads)
        m1, s1 = r.estimates[1]
        m2, _ = r.estimates[2]
        res.checks.append(_se(m1, s1, 1.0, 3.0, "interval E[mass]"))
        res.checks.append(_rel(m2, 25.0 / 12.0, 0.05, "interval E[mass^2]"))
    if "circle" in geometries:
        cfg = sim.FieldConfig("circle", N, seed=seed, stream=1)
        r = sim.moment_experiment(cfg, 0.5, orders=(1, 2), n_samples=n_samples, threads=threads)
        dyson = float(np.exp(float(ln_gamma(0.5)) - 2 * float(ln_gamma(0.75))))
        res.checks.append(_rel(r.estimates[2][0], dyson, 0.05, "circle tau=4 E[mass^2]"))


@_timed(10, "complex Selberg routes and strip")
def criterion_10(res: CriterionResult):
    p = laws.ComplexSelbergParams(2.0, -0.8, -0.8)
    direct = laws.complex_selberg_integer(1, p)
    for form in ("gamma2", "sine"):
        res.checks.append(_rel(laws.complex_selberg_mellin(1.0, p, form=form), direct, 1e-6, f"{form} vs direct"))
    res.checks.append(_rel(laws.complex_selberg_mellin(0.6, p, form="sine"),
                           laws.complex_selberg_mellin(0.6, p, form="gamma2"), 1e-6, "sine vs gamma2 q=0.6"))
    lo, hi = p.strip
    for q in (lo - 0.05, hi + 0.1, hi, 2.5):
        try:
            laws.complex_selberg_mellin(q, p)
            ok = False
        except StripError:
            ok = True
        res.checks.append(Check(f"strip rejects q={q:.3g}", float(ok), 1.0, 0.0 if ok else 1.0, 0.0))


@_timed(11, "critical limits")
def criterion_11(res: CriterionResult, taus=(1.2, 1.1, 1.05, 1.02)):
    for g in GEOMS:
        d = laws.critical_convergence(0.5, g, taus=taus)
        steps = np.diff(d)
        res.checks.append(Check(f"{g} monotone decrease {['%.3g' % x for x in d]}", float(max(steps)), 0.0,
                                float(max(max(steps), 0.0)), 0.0))
    v = laws.derivative_negative_moment(1)
    res.checks.append(_rel(v, 24, 1e-10, "derivative law E[M^-1]"))
    res.checks.append(_rel(laws.critical_negative_moment(1, "interval"), 24, 1e-10,
                           "critical interval E[M^-1] from Gamma product"))


@_timed(12, "inverse participation ratio exponent")
def criterion_12(res: CriterionResult, n_samples=4000, seed=12, threads=None):
    beta = np.sqrt(0.1)
    r = sim.ipr_experiment(beta, n=2, n_samples=n_samples, seed=seed, threads=threads)
    slope, pred = r.extra["slope"], r.extra["predicted_slope"]
    res.note = r.status
    res.checks.append(Check("fitted log-log slope", slope, pred, abs(slope - pred), 0.1))


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    f.number: f for f in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
                          criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12)
}


# --------------------------------------------------------------------------
# extra identity checks (not numbered criteria)

def multigamma_identities() -> CriterionResult:
    res = CriterionResult(0, "multiple gamma identities")
    t0 = time.perf_counter()
    for M, a in ((1, (1.3,)), (2, (1.0, 2.5)), (3, (0.7, 1.1, 1.9)), (4, (1.0, 0.5, 1.5, 2.0))):
        prm = mg.MultiGammaParams(M, a)
        for w in (0.6, 2.3 + 1.1j, -0.45):
            for i in range(M):
                res.checks.append(_abs(mg.functional_equation_residual(prm, w, i), 1e-10,
                                       f"functional eq M={M} i={i} w={w}"))
            res.checks.append(_abs(mg.scaling_residual(M, 1.7, w, a), 1e-10, f"scaling M={M} w={w}"))
        if M <= 3:
            q = mg.log_multiple_gamma(prm, 1.7, "quadrature").value
            f = mg.log_multiple_gamma(prm, 1.7).value
            res.checks.append(_abs(abs(q - f), 1e-8, f"quadrature vs shift M={M}", q, f))
    for tau in (1.0, 2.5, 0.6):
        r, bound = mg.general_shintani_check(0.8 + 0.3j, tau)
        res.checks.append(_abs(r, max(bound, 1e-12), f"Shintani product tau={tau}"))
        res.checks.append(_abs(mg.double_gamma_identity_residual(0.35, tau), 1e-10, f"G2 Gamma identity tau={tau}"))
        res.checks.append(_abs(mg.repeated_ratio_residual(1.3, tau, 3), 1e-10, f"repeated ratio tau={tau}"))
        res.checks.append(_abs(mg.barnes_multiplication_check(0.9, (1.0, tau), 2), 1e-10,
                               f"multiplication k=2 tau={tau}"))
    res.runtime = time.perf_counter() - t0
    return res


def _restrict(fn, **kw):
    return lambda: fn(**kw)


SUITES: dict[str, list] = {
    "multigamma": [multigamma_identities],
    "barnesbeta": [criterion_7],
    "selberg": [_restrict(criterion_2, geometries=("interval",)), _restrict(criterion_3, geometries=("interval",)),
                _restrict(criterion_4, geometries=("interval",)), _restrict(criterion_6, geometries=("interval",)),
                criterion_8],
    "morris": [criterion_1, _restrict(criterion_2, geometries=("circle",)),
               _restrict(criterion_3, geometries=("circle",)), _restrict(criterion_4, geometries=("circle",)),
               _restrict(criterion_6, geometries=("circle",))],
    "critical": [criterion_11],
    "complex": [criterion_10],
    "involution": [criterion_5],
    "mc": [criterion_9, criterion_12],
}


def run_suite(name: str) -> list[CriterionResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [fn() for fn in SUITES[name]]


def run_criteria(numbers=None) -> list[CriterionResult]:
    return [CRITERIA[k]() for k in (numbers or sorted(CRITERIA))]
