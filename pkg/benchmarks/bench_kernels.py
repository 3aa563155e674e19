"""Compare the compiled and pure-Python elimination backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--pairs5 3000]

Each workload runs under both backends; results are checked for equality.
"""
import argparse
import random
import time

from qwdist import _kernels_py, kernels
from qwdist.distinguish import _diag_null_cached, all_pair_nulls, diag_null, pair_null
from qwdist.graphs import enumerate_labeled_connected, laplacian

try:
    from qwdist import _kernels as _compiled
except ImportError:
    _compiled = None


def use(impl):
    kernels.rref = impl.rref
    kernels.nullspace = impl.nullspace
    kernels.restrict = impl.restrict
    kernels.restrict_pair = impl.restrict_pair
    _diag_null_cached.cache_clear()


def timed(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        _diag_null_cached.cache_clear()
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(pairs5):
    rng = random.Random(0)
    mats = [[[rng.randint(-3, 3) for _ in range(16)] for _ in range(240)] for _ in range(200)]
    laps4 = [laplacian(g) for g in enumerate_labeled_connected(4)]
    laps5 = [laplacian(g) for g in enumerate_labeled_connected(5)]
    sample5 = rng.sample([(i, j) for i in range(len(laps5)) for j in range(i, len(laps5))], pairs5)
    return {
        "rref 200 x (240x16)": lambda: [kernels.rref(m, 16) for m in mats],
        "order 4 all pairs (741)": lambda: [r.space for r in all_pair_nulls(laps4)],
        "order 5 diagonal (728)": lambda: [diag_null(lap) for lap in laps5],
        f"order 5 sampled pairs ({pairs5})": lambda: [pair_null(laps5[i], laps5[j]).space for i, j in sample5],
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pairs5", type=int, default=3000)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled backend not built; only the pure-Python timings are available")
    backends = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    jobs = workloads(args.pairs5)
    print(f"{'workload':34s} " + " ".join(f"{name:>10s}" for name, _ in backends) + "    speedup")
    for label, job in jobs.items():
        times, outs = [], []
        for _, impl in backends:
            use(impl)
            t, out = timed(job, args.repeat)
            times.append(t)
            outs.append(out)
        assert all(o == outs[0] for o in outs), f"backends disagree on {label}"
        speed = f"{times[0] / times[-1]:9.2f}x" if len(times) > 1 else ""
        print(f"{label:34s} " + " ".join(f"{t:9.3f}s" for t in times) + f" {speed}")


if __name__ == "__main__":
    main()
