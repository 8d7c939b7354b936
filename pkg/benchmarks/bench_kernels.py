"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each kernel is run on identical inputs by both backends; the table lists the
best-of-``repeat`` wall time, the speedup and the largest relative deviation
between the two outputs.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from gmclab import _kernels_py as py
from gmclab.multigamma import _RADIUS, _asymptotic_coefficients

try:
    from gmclab import _kernels as cy
except ImportError:  # extension not built
    cy = None


def cases(rng):
    z = rng.uniform(0.05, 60, 200_000) + 1j * rng.uniform(-20, 20, 200_000)
    w = rng.uniform(-3, 15, 20_000) + 1j * rng.uniform(-5, 5, 20_000)
    e, d = _asymptotic_coefficients((1.0, 2.5))
    field = rng.standard_normal((256, 4096)) * 3.0
    logw = np.log(np.full(4096, 1 / 4096))
    return {
        "loggamma (2e5 complex)": (lambda m: m.loggamma(z)),
        "log_gamma2 (2e4 complex)": (lambda m: m.log_gamma2(w, 1.0, 2.5, e, d, _RADIUS)),
        "weighted_expsum (256 x 4096)": (lambda m: m.weighted_expsum(field, 0.45, logw)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not available; only the fallback is timed", file=sys.stderr)
    rows = []
    for name, fn in cases(np.random.default_rng(0)).items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        row = {"kernel": name, "python_s": t_py}
        if cy is not None:
            t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
            a, b = np.asarray(fn(py)), np.asarray(fn(cy))
            dev = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1.0)))
            row.update(cython_s=t_cy, speedup=t_py / t_cy, max_rel_dev=dev)
        rows.append(row)
    print(f"{'kernel':<30} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8} {'max rel dev':>12}")
    for r in rows:
        print(f"{r['kernel']:<30} {r['python_s']:>11.4f} {r.get('cython_s', float('nan')):>11.4f} "
              f"{r.get('speedup', float('nan')):>8.2f} {r.get('max_rel_dev', float('nan')):>12.2e}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
