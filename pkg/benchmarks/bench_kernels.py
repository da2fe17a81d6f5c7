"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs once to warm up (numba compiles on first call, cached on
disk afterwards), then ``--repeat`` times per backend; the best time is kept.
Results of both backends are checked for equality before timing is reported.
"""

import argparse
import time

import numpy as np

from constcurv import _jit, build_clique_complex, fixture, minimize_variance
from constcurv.curvature import sample_index_maps
from constcurv.kernels import clique_chi_batch
from constcurv.random_graphs import ErParams, _edge_draws


def workloads():
    ico = build_clique_complex(fixture("icosahedron"))
    fish = build_clique_complex(fixture("fish"))
    tree = build_clique_complex(fixture("tree(5,60)"))
    draws12 = _edge_draws(ErParams(12, 0.5, seed=1), 20000)
    draws24 = _edge_draws(ErParams(24, 0.3, seed=2), 500)
    return [
        ("index maps, icosahedron, 10^5 samples", lambda: sample_index_maps(ico, 10**5, 0)),
        ("frank-wolfe away, fish", lambda: minimize_variance(fish, tol=1e-12).variance),
        ("frank-wolfe open_loop, tree(60), 2*10^4 it",
         lambda: minimize_variance(tree, tol=1e-14, max_iter=20000, step="open_loop").variance),
        ("clique chi, n=12, 2*10^4 graphs", lambda: clique_chi_batch(draws12, 12)),
        ("clique chi, n=24, 500 graphs", lambda: clique_chi_batch(draws24, 24)),
    ]


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _jit.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    before = _jit.backend()
    print(f"{'workload':46s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}")
    try:
        for name, fn in workloads():
            times, outs = {}, {}
            for backend in ("numba", "numpy"):
                _jit.set_backend(backend)
                fn()
                times[backend], outs[backend] = best_time(fn, args.repeat)
            assert np.array_equal(np.asarray(outs["numba"]), np.asarray(outs["numpy"])), name
            print(f"{name:46s} {times['numba']:10.4f} {times['numpy']:10.4f} "
                  f"{times['numpy'] / times['numba']:7.1f}x")
    finally:
        _jit.set_backend(before)


if __name__ == "__main__":
    main()
