"""Compiled versus pure-Python row reduction.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 60]

Times both kernels on random sparse rational and mod-p matrices, checks that
they agree, then runs the ADE corpus end to end under each backend.
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from gmpy2 import mpq

from koenig import _kernels_py

try:
    from koenig import _kernels
except ImportError:  # pragma: no cover
    _kernels = None


def random_matrix(rng, n, m, density, modp=None, small=False):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(m):
            if rng.random() < density:
                if modp:
                    row.append(rng.randrange(1, modp))
                elif small:
                    row.append(mpq(rng.choice((-1, 1, 2))))
                else:
                    row.append(mpq(rng.randint(-9, 9), rng.randint(1, 5)))
            else:
                row.append(0 if modp else mpq(0))
        rows.append(row)
    return rows


def best_of(fn, mats, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        work = [[list(r) for r in M] for M in mats]
        t = time.perf_counter()
        out = [fn(W) for W in work]
        best = min(best, time.perf_counter() - t)
    return best, out


def struct_mul_times(repeat, count=400):
    """Products of random elements of Q(D8) (dim 32) through both kernels."""
    from koenig.chain import normalization_chain
    from koenig.fixtures import get_fixture
    from koenig.order import build_order
    from koenig.qha import build_layers

    ch = normalization_chain(get_fixture("D8").ring())
    Q = build_layers(ch, build_order(ch))[-1].algebra
    rng = random.Random(2)
    vecs = [[mpq(rng.randint(-3, 3)) if rng.random() < 0.4 else mpq(0) for _ in range(Q.dim)]
            for _ in range(2 * count)]
    pairs = [([(i, a) for i, a in enumerate(x) if a], [(j, b) for j, b in enumerate(y) if b])
             for x, y in zip(vecs[::2], vecs[1::2])]
    times = []
    for k in (_kernels_py, _kernels):
        best = float("inf")
        for _ in range(repeat):
            t = time.perf_counter()
            res = [k.struct_mul(xs, ys, Q.rows, Q.zero()) for xs, ys in pairs]
            best = min(best, time.perf_counter() - t)
        times.append((best, res))
    assert times[0][1] == times[1][1], "kernels disagree on struct_mul"
    return times[0][0], times[1][0]


def corpus_time(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["KOENIG_PURE_PYTHON"] = "1"
    else:
        env.pop("KOENIG_PURE_PYTHON", None)
    t = time.perf_counter()
    subprocess.run([sys.executable, "-m", "koenig.cli", "fixtures", "run"], env=env, check=True,
                   stdout=subprocess.DEVNULL)
    return time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--skip-corpus", action="store_true")
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; nothing to compare")
        return 1
    rng = random.Random(1)
    n = args.size
    # the first two shapes resemble the window matrices of the lattice layer;
    # the dense fraction case is dominated by GMP bignum arithmetic
    cases = [
        ("rational 40x80", [random_matrix(rng, 40, 80, 0.08, small=True) for _ in range(10 * args.count)], None),
        ("rational 20x20", [random_matrix(rng, 20, 20, 0.3, small=True) for _ in range(50 * args.count)], None),
        ("rational bignum", [random_matrix(rng, n, n, 0.6) for _ in range(args.count)], None),
        ("mod 10007", [random_matrix(rng, n, n, 0.6, 10007) for _ in range(args.count)], 10007),
    ]
    print("%-16s %12s %12s %8s" % ("case", "python [s]", "compiled [s]", "speedup"))
    for name, mats, p in cases:
        ncols = len(mats[0][0])
        if p is None:
            tp, op = best_of(lambda W: (_kernels_py.rref_inplace(W, ncols), W), mats, args.repeat)
            tc, oc = best_of(lambda W: (_kernels.rref_inplace(W, ncols), W), mats, args.repeat)
        else:
            tp, op = best_of(lambda W: (_kernels_py.rref_modp(W, ncols, p), W), mats, args.repeat)
            tc, oc = best_of(lambda W: (_kernels.rref_modp(W, ncols, p), W), mats, args.repeat)
        assert op == oc, "kernels disagree on %s" % name
        print("%-16s %12.4f %12.4f %7.1fx" % (name, tp, tc, tp / tc))
    tp, tc = struct_mul_times(args.repeat)
    print("%-16s %12.4f %12.4f %7.1fx" % ("struct_mul Q(D8)", tp, tc, tp / tc))
    if not args.skip_corpus:
        tp, tc = corpus_time(True), corpus_time(False)
        print("%-16s %12.2f %12.2f %7.1fx" % ("ADE corpus", tp, tc, tp / tc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
