"""Compiled versus pure-Python kernels, plus one end-to-end pipeline run per backend.

    python benchmarks/bench_kernels.py [--sizes 256,1024,4096] [--repeat 5]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from treenum._kernels import _pure

try:
    from treenum._kernels import _core
except ImportError:
    _core = None


def graph(n, seed=0):
    rng = random.Random(seed)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    while len(edges) < 2 * n:
        u, v = sorted(rng.sample(range(n), 2))
        edges.add((u, v))
    edges = sorted(edges)
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    offsets, targets = [0], []
    for row in adj:
        targets += row
        offsets.append(len(targets))
    return edges, offsets, targets


def kernel_cases(n):
    edges, offsets, targets = graph(n)
    rng = random.Random(n)
    perm = list(range(len(targets)))
    rng.shuffle(perm)
    out = [rng.randrange(4) for _ in perm]
    yield "deliver", lambda m: m.deliver(out, perm)
    yield "lowlink_bridges", lambda m: m.lowlink_bridges(n, offsets, targets)
    if n <= 1024:
        yield "removal_bridges", lambda m: m.removal_bridges(n, edges)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def pipeline_seconds(pure: bool) -> float:
    code = (
        "import time; from treenum import generate, run_until_halt, protocols as P;"
        "cfg = generate('random_connected', 200, extra_edges=300, seed=1);"
        "t = time.perf_counter(); run_until_halt(cfg, P.pipeline(), record=False);"
        "print(time.perf_counter() - t)"
    )
    env = dict(os.environ, TREENUM_PURE="1" if pure else "")
    return float(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,1024,4096")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _core is None:
        print("compiled kernels not built; run `python setup.py build_ext --inplace`")
        return 1
    print(f"{'kernel':<16} {'V':>6} {'pure ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        for name, call in kernel_cases(n):
            assert call(_pure) == call(_core)
            tp, tc = best(lambda: call(_pure), args.repeat), best(lambda: call(_core), args.repeat)
            print(f"{name:<16} {n:>6} {tp * 1e3:>10.3f} {tc * 1e3:>12.3f} {tp / tc:>8.1f}")
    tp, tc = pipeline_seconds(True), pipeline_seconds(False)
    print(f"\npipeline, random_connected V=200 E=499: pure {tp:.2f}s, compiled {tc:.2f}s ({tp / tc:.2f}x)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
