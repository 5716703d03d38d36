"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--n 5000] [--features 20] [--repeat 3]

Both backends must return identical results; the script checks that before
reporting timings.
"""

import argparse
import time

import numpy as np

from rebalance import _backend
from rebalance.learners import linear_svm_fit
from rebalance.neighbors import kneighbors
from rebalance.over_sampling import SMOTE
from rebalance.synthgen import make_imbalanced
from rebalance.under_sampling import EditedNearestNeighbours


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def _as_bytes(out):
    parts = out if isinstance(out, tuple) else (out,)
    return b"".join(np.asarray(p).tobytes() for p in parts)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=5000)
    parser.add_argument("--features", type=int, default=20)
    parser.add_argument("--k", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _backend.compiled is None:
        raise SystemExit("compiled kernels unavailable; build with `pip install -e .`")

    d = make_imbalanced(args.n, args.features, [0.1, 0.9], seed=0)
    X = d.features
    skip = np.arange(len(X))
    cases = {
        f"knn self-query n={args.n} k={args.k}": lambda be: kneighbors(
            X, X, args.k, skip, backend=be),
        "pegasos 20 epochs": lambda be: linear_svm_fit(d, seed=0, backend=be).weights,
    }
    print(f"{'kernel':<34}{'python':>10}{'compiled':>10}{'speedup':>9}")
    for name, fn in cases.items():
        t_py, out_py = best_of(lambda: fn("python"), args.repeat)
        t_c, out_c = best_of(lambda: fn("compiled"), args.repeat)
        if _as_bytes(out_py) != _as_bytes(out_c):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<34}{t_py:>9.3f}s{t_c:>9.3f}s{t_py / t_c:>8.1f}x")

    # end-to-end samplers use the default (compiled) backend
    for label, sampler in (("SMOTE regular", SMOTE(seed=0)),
                           ("ENN k=3", EditedNearestNeighbours(3))):
        t, _ = best_of(lambda: sampler.fit_sample(d), args.repeat)
        print(f"{label + ' (end to end)':<34}{'':>10}{t:>9.3f}s")


if __name__ == "__main__":
    main()
