"""Compare the compiled and pure-Python kernel backends.

Runs each kernel on synthetic embedding batches, then a full mining run with
either backend swapped in, and prints best-of-N wall times.

    python benchmarks/bench_kernels.py [--repeat 5] [--rows 20000]
"""

import argparse
import random
import sys
import time

import numpy as np

from cigmine import DataSet, IsoMode, MinerConfig, TemporalEdge, TemporalNetwork, kernels, mine
from cigmine import miner as miner_mod


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def synthetic_csr(rng, n, degree):
    trip = sorted({(a, rng.randrange(n), rng.randrange(4)) for a in range(n) for _ in range(degree)})
    trip = [t for t in trip if t[0] != t[1]]
    ptr = np.zeros(n + 1, dtype=np.int64)
    for a, _, _ in trip:
        ptr[a + 1] += 1
    np.cumsum(ptr, out=ptr)
    return ptr, np.array([b for _, b, _ in trip], dtype=np.int32), np.array([d for *_, d in trip], dtype=np.int32)


def contact_dataset(rng, n_networks, n_edges):
    nets = []
    for g in range(n_networks):
        edges = []
        for _ in range(n_edges):
            u, v = rng.sample(range(12), 2)
            edges.append(TemporalEdge(f"p{u}", f"p{v}", "ab"[u % 2], "c", "ab"[v % 2],
                                      rng.randrange(0, 400, 20), rng.randrange(20, 100, 20)))
        nets.append(TemporalNetwork.from_edges(edges, f"g{g}"))
    return DataSet(tuple(nets))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rows", type=int, default=20000)
    args = ap.parse_args(argv)

    if kernels.compiled is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
    backends = {"python": kernels.python, "cython": kernels.compiled}
    rng = random.Random(0)
    n = 5000
    out = synthetic_csr(rng, n, 6)
    inn = synthetic_csr(rng, n, 6)
    k = 4
    embs = np.array([rng.sample(range(n), k) for _ in range(args.rows)], dtype=np.int32)
    rm = np.array([3, 1, 0], dtype=np.int32)

    print(f"{'case':<28}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    rows = []
    for name, call in [
        (f"extensions ({args.rows} rows)", lambda b: b.extensions(embs, rm, *out, *inn)),
        (f"induced ({args.rows} rows)", lambda b: b.induced(embs, *out)),
    ]:
        t = {b: best_of(lambda: call(mod), args.repeat) for b, mod in backends.items()}
        rows.append((name, t))

    ds = contact_dataset(random.Random(0), 6, 200)
    cfg = MinerConfig(4, IsoMode("is", 40), max_pattern_edges=3)
    t = {}
    for b, mod in backends.items():
        miner_mod.kernels = mod
        t[b] = best_of(lambda: mine(ds, cfg), max(1, args.repeat // 2))
    miner_mod.kernels = kernels
    rows.append(("mine (6 x 200 edges, is)", t))

    for name, t in rows:
        print(f"{name:<28}{t['python']:>12.4f}{t['cython']:>12.4f}{t['python'] / t['cython']:>9.1f}x")


if __name__ == "__main__":
    main()
