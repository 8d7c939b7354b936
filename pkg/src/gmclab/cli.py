"""Command-line front end.

Usage: ``gmclab <group> <action> [options]`` (or ``python -m gmclab``).
Every run produces a versioned JSON report; see ``gmclab --help``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys
import time
from typing import Optional, Sequence

import numpy as np

import gmclab
from gmclab import barnes_beta as bb
from gmclab import laws
from gmclab import multigamma as mg
from gmclab import sim
from gmclab import verify as vf
from gmclab.errors import DomainError

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; validation errors are 1 here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


# --------------------------------------------------------------------------
# report encoding

def _encode(x, out: list):
    if isinstance(x, (bool, np.bool_)):
        out.append("true" if x else "false")
    elif x is None:
        out.append("null")
    elif isinstance(x, (int, np.integer)):
        out.append(str(int(x)))
    elif isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            out.append("null")
        else:
            t = format(x, ".17g")
            out.append(t if any(c in t for c in ".e") else t + ".0")
    elif isinstance(x, (complex, np.complexfloating)):
        _encode({"re": float(x.real), "im": float(x.imag)}, out)
    elif isinstance(x, str):
        out.append(json.dumps(x))
    elif isinstance(x, dict):
        out.append("{")
        for i, (k, v) in enumerate(x.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)) + ": ")
            _encode(v, out)
        out.append("}")
    elif isinstance(x, (list, tuple, np.ndarray)):
        out.append("[")
        for i, v in enumerate(list(x)):
            if i:
                out.append(", ")
            _encode(v, out)
        out.append("]")
    else:
        out.append(json.dumps(str(x)))


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    out: list = []
    _encode(obj, out)
    return "".join(out)


def _versions() -> dict:
    import scipy
    return {"gmclab": gmclab.__version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version(), "backend": gmclab.BACKEND}


def _value(v):
    v = complex(v)
    return v.real if v.imag == 0 else v


# --------------------------------------------------------------------------
# argument types

def _floats(s: str) -> tuple:
    try:
        return tuple(float(x) for x in s.replace(";", ",").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _ints(s: str) -> tuple:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _cplx(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")


# --------------------------------------------------------------------------
# command handlers: each returns (results, residuals)

def _law_params(a) -> laws.GMCLawParams:
    return laws.GMCLawParams(a.geometry, a.tau, a.lambda1, a.lambda2)


def cmd_gamma_eval(a):
    p = mg.MultiGammaParams(len(a.a), a.a)
    res = []
    for w in a.w:
        ev = mg.log_multiple_gamma(p, w, method=a.method)
        res.append({"w": _value(w), "log_value": _value(ev.value), "value": _value(np.exp(ev.value)),
                    "method": ev.method, "error_estimate": ev.error_estimate})
    resid = [{"name": f"functional equation w={_value(w)}", "value": mg.functional_equation_residual(p, w)}
             for w in a.w] if p.M else []
    return res, resid


def cmd_sine_eval(a):
    p = mg.MultiGammaParams(len(a.a), a.a)
    res = []
    for w in a.w:
        ls = mg.multiple_sine(p, w)
        res.append({"w": _value(w), "log_value": _value(ls), "value": _value(np.exp(ls))})
    return res, []


def _eta_params(a) -> bb.BarnesBetaParams:
    return bb.BarnesBetaParams(len(a.a), len(a.b) - 1, a.a, a.b)


def cmd_eta_eval(a):
    p = _eta_params(a)
    res, resid = [], []
    for q in a.q:
        lv = complex(bb.log_eta(p, q))
        row = {"q": _value(q), "log_value": _value(lv), "value": _value(np.exp(lv))}
        if a.route == "levy_khinchine":
            lk = bb.levy_khinchine_log_eta(p, q)
            row["levy_khinchine_log_value"] = _value(lk)
            resid.append({"name": f"Levy-Khinchine vs multiple gamma q={_value(q)}", "value": abs(lk - lv)})
        res.append(row)
    if p.variant == "standard" and p.M < p.N:
        res.append({"atom_mass": bb.atom_mass(p)})
    return res, resid


def cmd_eta_sample(a):
    p = _eta_params(a)
    s = bb.barnes_beta_sample(p, a.n, seed=a.seed, stream=a.stream)
    if a.csv:
        s.to_csv(a.csv)
    return [_sample_summary(s.values, lambda k: bb.eta_mellin(p, k), a.orders) | {"info": s.info}], []


def cmd_eta_verify(a):
    p = _eta_params(a)
    resid = []
    for q in a.q:
        for i in range(p.M):
            resid.append({"name": f"functional equation i={i} q={_value(q)}",
                          "value": bb.functional_equation_residual(p, q, i)})
        if p.M and p.N:
            for k, v in bb.symmetry_residuals(p, q, a.x).items():
                resid.append({"name": f"symmetry {k} q={_value(q)}", "value": v})
        if np.real(q) > -p.b[0]:
            lk = bb.levy_khinchine_log_eta(p, q)
            resid.append({"name": f"Levy-Khinchine q={_value(q)}", "value": abs(lk - complex(bb.log_eta(p, q)))})
    worst = max((r["value"] for r in resid), default=0.0)
    return [{"max_residual": worst, "passed": worst <= a.tol}], resid


def _sample_summary(x, target, orders):
    n = x.size
    out = {"n": n, "mean": float(x.mean()), "variance": float(x.var(ddof=1)), "moments": []}
    for k in orders:
        xk = x ** k
        out["moments"].append({"k": k, "estimate": float(xk.mean()),
                               "std_error": float(xk.std(ddof=1) / np.sqrt(n)), "exact": float(target(k))})
    return out


def cmd_law_eval(a):
    p = _law_params(a)
    res, resid = [], []
    for q in a.q:
        r = laws.mellin(q, p, rep=a.rep, p_max=a.p_max) if not p.critical else laws.mellin(q, p)
        res.append({"q": _value(q), "value": _value(r.value), "log_value": _value(r.log_value),
                    "representation": r.kind, "error_estimate": r.error_estimate})
        if a.rep != "double_gamma" and not p.critical:
            ref = laws.mellin(q, p).log_value
            resid.append({"name": f"{a.rep} vs double_gamma q={_value(q)}", "value": abs(r.log_value - ref)})
    return res, resid


def cmd_law_moments(a):
    p = _law_params(a)
    res, resid = [], []
    for n in range(1, a.n_max + 1):
        if n < p.tau:
            exact = laws.moment_product(n, p)
            m = laws.mellin(n, p).value
            res.append({"q": n, "product": exact, "mellin": m})
            resid.append({"name": f"q={n}", "value": abs(m - exact) / abs(exact)})
        exact = laws.negative_moment_product(n, p)
        m = laws.mellin(-n, p).value if not p.critical else laws.critical_negative_moment(n, p.geometry,
                                                                                         p.lambda1, p.lambda2)
        res.append({"q": -n, "product": exact, "mellin": m})
        resid.append({"name": f"q={-n}", "value": abs(m - exact) / abs(exact)})
    return res, resid


def cmd_law_sample(a):
    p = _law_params(a)
    s = laws.law_sample(p, a.n, seed=a.seed, stream=a.stream)
    if a.csv:
        s.to_csv(a.csv)
    orders = [k for k in a.orders if k < p.tau]
    return [_sample_summary(s.values, lambda k: laws.mellin(k, p).value, orders)
            | {"factors": s.info["factors"]}], []


def cmd_law_critical(a):
    res = []
    for q in a.q:
        row = {"q": _value(q), "value": _value(laws.critical_mellin(q, a.geometry, a.lambda1, a.lambda2))}
        if np.imag(q) == 0 and np.real(q) < 1:
            row["convergence"] = laws.critical_convergence(q, a.geometry, a.lambda1, a.lambda2)
        res.append(row)
    if a.geometry == "interval" and a.lambda1 == 0 and a.lambda2 == 0:
        res.append({"derivative_negative_moments": {str(l): laws.derivative_negative_moment(l) for l in (1, 2, 3)}})
    return res, []


def cmd_complex_eval(a):
    p = laws.ComplexSelbergParams(a.tau, a.lambda1, a.lambda2)
    res, resid = [], []
    lo, hi = p.strip
    for q in a.q:
        v = laws.complex_selberg_mellin(q, p, form=a.form)
        row = {"q": _value(q), "value": _value(v), "strip": [lo, hi]}
        other = "sine" if a.form == "gamma2" else "gamma2"
        resid.append({"name": f"{a.form} vs {other} q={_value(q)}",
                      "value": abs(v - laws.complex_selberg_mellin(q, p, form=other)) / abs(v)})
        if q == 1:
            d = laws.complex_selberg_integer(1, p)
            row["direct"] = d
            resid.append({"name": "direct integral q=1", "value": abs(v - d) / abs(d)})
        res.append(row)
    return res, resid


def _field_config(a) -> sim.FieldConfig:
    return sim.FieldConfig(a.geometry, a.N, kappa=a.kappa, seed=a.seed, stream=a.stream, method=a.method)


def cmd_sim_field(a):
    cfg = _field_config(a)
    V = sim.field_array(cfg, a.count, threads=a.threads)
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            fh.write(f"# seed={cfg.seed} stream={cfg.stream} geometry={cfg.geometry} N={cfg.N} kappa={cfg.kappa}\n")
            w = csv.writer(fh)
            w.writerow(["x"] + [f"field_{i}" for i in range(a.count)])
            for i, x in enumerate(cfg.grid):
                w.writerow([repr(float(x))] + [repr(float(v)) for v in V[:, i]])
    target = -2 * np.log(cfg.epsilon) + 2 * cfg.effective_kappa
    return [{"count": a.count, "N": cfg.N, "point_variance": float(V.var()), "target_point_variance": target,
             "max": float(V.max()), "effective_kappa": cfg.effective_kappa}], []


def cmd_sim_moments(a):
    cfg = _field_config(a)
    r = sim.moment_experiment(cfg, a.beta, a.lambda1, a.lambda2, orders=a.orders, n_samples=a.n_samples,
                              threads=a.threads)
    d = r.to_dict()
    resid = [{"name": f"E[mass^{k}] relative", "value": abs(v[0] - r.targets[k]) / abs(r.targets[k])}
             for k, v in r.estimates.items() if r.targets.get(k)]
    return [d], resid


def cmd_sim_ipr(a):
    r = sim.ipr_experiment(a.beta, a.n, Ns=a.Ns, n_samples=a.n_samples, seed=a.seed, stream=a.stream,
                           threads=a.threads)
    d = r.to_dict()
    return [d], [{"name": "slope", "value": abs(r.extra["slope"] - r.extra["predicted_slope"])}]


def cmd_sim_max(a):
    r = sim.maximum_experiment(a.geometry, Ns=a.Ns, n_samples=a.n_samples, seed=a.seed, stream=a.stream,
                               threads=a.threads)
    return [r.to_dict()], []


class VerificationFailed(ArithmeticError):
    pass


def cmd_verify(a):
    out = vf.run_criteria(a.criterion) if a.criterion else vf.run_suite(a.suite)
    for r in out:
        print(r.line(), file=sys.stderr)
    res = [r.as_dict() for r in out]
    resid = [{"name": f"criterion {r.number}: {r.title}", "value": r.max_residual} for r in out]
    if not all(r.passed for r in out):
        a._failed = True
    return res, resid


# --------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("run options")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--stream", type=int, default=0)
    g.add_argument("--threads", type=int, default=None, help="worker threads (default: $GMCLAB_THREADS or 1)")
    g.add_argument("--format", choices=("json", "csv", "table"), default="json")
    g.add_argument("--output", default=None, help="also write the JSON report here")
    g.add_argument("--config", default=None, help="key=value file overriding defaults")


def _law_flags(p, q=True):
    p.add_argument("--geometry", choices=laws.GEOMETRIES, default="interval")
    p.add_argument("--tau", type=float, default=2.0)
    p.add_argument("--lambda1", type=float, default=0.0)
    p.add_argument("--lambda2", type=float, default=0.0)
    if q:
        p.add_argument("--q", type=_cplx, nargs="+", default=[1.0])


def _eta_flags(p):
    p.add_argument("--a", type=_floats, default=(1.0, 2.0), help="periods a_1..a_M")
    p.add_argument("--b", type=_floats, default=(1.0, 1.0, 1.0), help="b_0..b_N")


def _field_flags(p):
    p.add_argument("--geometry", choices=laws.GEOMETRIES, default="interval")
    p.add_argument("--N", type=int, default=1024)
    p.add_argument("--kappa", type=float, default=None)
    p.add_argument("--method", choices=("auto", "dense", "circulant"), default="auto")


def build_parser():
    root = _Parser(prog="gmclab", description="Multiple gamma functions, Barnes beta laws and GMC total mass.")
    groups = root.add_subparsers(dest="group", metavar="<group>", parser_class=_Parser)
    leaves = {}

    def leaf(group_parser, name, fn, help_):
        p = group_parser.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(handler=fn)
        leaves[p.prog] = p
        return p

    g = groups.add_parser("gamma", help="multiple gamma function").add_subparsers(dest="action", metavar="<action>")
    p = leaf(g, "eval", cmd_gamma_eval, "log Gamma_M(w|a)")
    p.add_argument("--a", type=_floats, default=(1.0, 1.0))
    p.add_argument("--w", type=_cplx, nargs="+", required=True)
    p.add_argument("--method", choices=("auto", "closed_form", "functional_shift", "quadrature"), default="auto")

    g = groups.add_parser("sine", help="multiple sine function").add_subparsers(dest="action", metavar="<action>")
    p = leaf(g, "eval", cmd_sine_eval, "log S_M(w|a)")
    p.add_argument("--a", type=_floats, default=(1.0, 1.0))
    p.add_argument("--w", type=_cplx, nargs="+", required=True)

    g = groups.add_parser("eta", help="Barnes beta distributions").add_subparsers(dest="action", metavar="<action>")
    p = leaf(g, "eval", cmd_eta_eval, "Mellin transform")
    _eta_flags(p)
    p.add_argument("--q", type=_cplx, nargs="+", default=[1.0])
    p.add_argument("--route", choices=("multiple_gamma", "levy_khinchine"), default="multiple_gamma")
    p = leaf(g, "sample", cmd_eta_sample, "draw samples")
    _eta_flags(p)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--orders", type=_ints, default=(1, 2, 3))
    p.add_argument("--csv", default=None, help="dump samples to this CSV file")
    p = leaf(g, "verify", cmd_eta_verify, "identity residuals")
    _eta_flags(p)
    p.add_argument("--q", type=_cplx, nargs="+", default=[0.4, 1.3 + 0.2j])
    p.add_argument("--x", type=float, default=0.35)
    p.add_argument("--tol", type=float, default=1e-9)

    g = groups.add_parser("law", help="laws of the total mass").add_subparsers(dest="action", metavar="<action>")
    p = leaf(g, "eval", cmd_law_eval, "Mellin transform E[M^q]")
    _law_flags(p)
    p.add_argument("--rep", choices=laws.REPRESENTATIONS, default="double_gamma")
    p.add_argument("--p-max", type=int, default=6)
    p = leaf(g, "moments", cmd_law_moments, "integer moments")
    _law_flags(p, q=False)
    p.add_argument("--n-max", type=int, default=3)
    p = leaf(g, "sample", cmd_law_sample, "sample via the product decomposition")
    _law_flags(p, q=False)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--orders", type=_ints, default=(1, 2))
    p.add_argument("--csv", default=None)
    p = leaf(g, "critical", cmd_law_critical, "critical (tau = 1) law")
    _law_flags(p)

    g = groups.add_parser("complex-selberg", help="complex Selberg integral").add_subparsers(
        dest="action", metavar="<action>")
    p = leaf(g, "eval", cmd_complex_eval, "analytic continuation in q")
    p.add_argument("--tau", type=float, default=2.0)
    p.add_argument("--lambda1", type=float, default=-0.8)
    p.add_argument("--lambda2", type=float, default=-0.8)
    p.add_argument("--q", type=_cplx, nargs="+", default=[1.0])
    p.add_argument("--form", choices=("gamma2", "sine"), default="gamma2")

    g = groups.add_parser("simulate", help="Monte Carlo on discretized fields").add_subparsers(
        dest="action", metavar="<action>")
    p = leaf(g, "field", cmd_sim_field, "sample fields")
    _field_flags(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--csv", default=None)
    p = leaf(g, "moments", cmd_sim_moments, "total mass moments")
    _field_flags(p)
    p.add_argument("--beta", type=float, default=np.sqrt(0.2))
    p.add_argument("--lambda1", type=float, default=0.0)
    p.add_argument("--lambda2", type=float, default=0.0)
    p.add_argument("--orders", type=_ints, default=(1, 2))
    p.add_argument("--n-samples", type=int, default=1000)
    p = leaf(g, "ipr", cmd_sim_ipr, "inverse participation ratio")
    p.add_argument("--beta", type=float, default=np.sqrt(0.1))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--Ns", type=_ints, default=(256, 512, 1024, 2048, 4096))
    p.add_argument("--n-samples", type=int, default=2000)
    p = leaf(g, "max", cmd_sim_max, "maximum of the field (demo)")
    p.add_argument("--geometry", choices=laws.GEOMETRIES, default="circle")
    p.add_argument("--Ns", type=_ints, default=(256, 512, 1024, 2048, 4096))
    p.add_argument("--n-samples", type=int, default=500)

    p = groups.add_parser("verify", help="run a named verification suite")
    _common(p)
    p.add_argument("--suite", choices=sorted(vf.SUITES), default="involution")
    p.add_argument("--criterion", type=int, nargs="+", choices=sorted(vf.CRITERIA), default=None)
    p.set_defaults(handler=cmd_verify)
    leaves[p.prog] = p

    p = groups.add_parser("replay", help="re-run the command stored in a JSON report")
    p.add_argument("report")
    p.add_argument("--output", default=None)
    p.set_defaults(handler=None)
    return root, leaves


# --------------------------------------------------------------------------
# config files

def read_config(path: str) -> dict:
    """key=value lines; '#' starts a comment.  Keys use flag names without dashes."""
    out = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{ln}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _apply_config(parser: argparse.ArgumentParser, cfg: dict):
    actions = {a.dest: a for a in parser._actions}
    for k, v in cfg.items():
        if k not in actions:
            raise UsageError(f"config key {k!r} is not an option of '{parser.prog}'")
        act = actions[k]
        conv = act.type or str
        val = [conv(x) for x in v.split()] if act.nargs == "+" else conv(v)
        if act.choices is not None and any(x not in act.choices for x in (val if act.nargs == "+" else [val])):
            raise UsageError(f"config value {v!r} not allowed for {k!r}")
        parser.set_defaults(**{k: val})


def _leaf_for(argv, leaves) -> Optional[argparse.ArgumentParser]:
    words = [w for w in argv if not w.startswith("-")]
    for n in (2, 1):
        key = " ".join(["gmclab"] + words[:n])
        if key in leaves:
            return leaves[key]
    return None


# --------------------------------------------------------------------------
# entry points

def _params_of(ns) -> dict:
    skip = {"handler", "group", "action", "output", "format", "config", "_failed"}
    def clean(v):
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        if isinstance(v, complex) and v.imag == 0:
            return v.real
        return v
    return {k: clean(v) for k, v in vars(ns).items() if k not in skip}


def _argv_from(command: str, params: dict) -> list:
    argv = command.split()
    for k, v in params.items():
        if v is None:
            continue
        flag = "--" + (k if k in ("N", "Ns") else k.replace("_", "-"))
        if isinstance(v, list):
            if k in ("q", "w", "criterion"):
                argv += [flag] + [_fmt_arg(x) for x in v]
            else:
                argv += [flag, ",".join(_fmt_arg(x) for x in v)]
        else:
            argv += [flag, _fmt_arg(v)]
    return argv


def _fmt_arg(x) -> str:
    if isinstance(x, dict) and "re" in x:
        x = complex(x["re"], x["im"])
    if isinstance(x, complex):
        return repr(x).strip("()")
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _table(results) -> str:
    buf = io.StringIO()
    for i, r in enumerate(results):
        for k, v in (r.items() if isinstance(r, dict) else [("value", r)]):
            if isinstance(v, (list, dict)) and len(dumps(v)) > 100:
                v = dumps(v)[:97] + "..."
            buf.write(f"{i:>3}  {k:<28} {v}\n")
    return buf.getvalue()


def _csv(results) -> str:
    buf = io.StringIO()
    keys = []
    for r in results:
        for k in (r if isinstance(r, dict) else {}):
            if k not in keys:
                keys.append(k)
    w = csv.writer(buf)
    w.writerow(keys)
    for r in results:
        w.writerow([dumps(r.get(k)) if isinstance(r.get(k), (list, dict, complex)) else r.get(k, "")
                    for k in keys])
    return buf.getvalue()


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Parse argv, dispatch, emit the report; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser, leaves = build_parser()
    try:
        if argv and argv[0] == "replay":
            ns = parser.parse_args(argv)
            with open(ns.report) as fh:
                rep = json.load(fh)
            argv = _argv_from(rep["command"], rep["params"]) + (["--output", ns.output] if ns.output else [])
        if "--config" in argv:
            leaf = _leaf_for(argv, leaves)
            i = argv.index("--config")
            if leaf is None or i + 1 >= len(argv):
                raise UsageError(parser.format_usage())
            _apply_config(leaf, read_config(argv[i + 1]))
        ns = parser.parse_args(argv)
        if getattr(ns, "handler", None) is None:
            raise UsageError(f"missing or unknown command\n{parser.format_help()}")
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, KeyError, json.JSONDecodeError) as e:
        print(f"gmclab: {e}", file=sys.stderr)
        return EXIT_VALIDATION

    command = " ".join(x for x in (ns.group, getattr(ns, "action", None)) if x)
    t0, wall = time.perf_counter(), time.time()
    status, code, error = "ok", EXIT_OK, None
    results, residuals = [], []
    try:
        results, residuals = ns.handler(ns)
        if getattr(ns, "_failed", False):
            status, code = "failed", EXIT_NUMERICAL
    except (DomainError, ValueError, TypeError) as e:
        status, code, error = "validation_error", EXIT_VALIDATION, f"{type(e).__name__}: {e}"
    except ArithmeticError as e:
        status, code, error = "numerical_error", EXIT_NUMERICAL, f"{type(e).__name__}: {e}"
    report = {"schema_version": SCHEMA_VERSION, "command": command, "params": _params_of(ns),
              "seed": getattr(ns, "seed", None), "status": status, "results": results, "residuals": residuals,
              "timing": {"start": wall, "wall_seconds": time.perf_counter() - t0}, "versions": _versions()}
    if error:
        report["error"] = error
        print(f"gmclab: {error}", file=sys.stderr)
    text = dumps(report)
    if ns.output:
        with open(ns.output, "w") as fh:
            fh.write(text + "\n")
    if ns.format == "json":
        stdout.write(text + "\n")
    else:
        stdout.write(_table(results) if ns.format == "table" else _csv(results))
        if not ns.output:
            print(text, file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
