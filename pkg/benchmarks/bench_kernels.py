"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py            # per-kernel timings
    python3 benchmarks/bench_kernels.py --e2e      # plus a full `sweep` run per backend

Each kernel is called once to warm up (JIT compile or cache load), then timed
with timeit.  Both backends must return equal results on every input.
"""

import argparse
import itertools
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from schreierlab import _kernels as K
from schreierlab.algebra import dihedral, product, symmetric
from schreierlab.catalogue import product_projection
from schreierlab.templates import ENGEL_SQUARE, induced_op


def cases():
    big = product(dihedral(10), dihedral(10)).monoid        # order 100
    ext = product_projection(symmetric(4), dihedral(10))   # |X| = 240
    free = np.array(list(itertools.product(range(3), repeat=4)), dtype=np.int64)
    batch = np.zeros((len(free), 3, 3), dtype=np.int64)
    batch[:, 0, :] = np.arange(3)
    batch[:, :, 0] = np.arange(3)
    batch[:, 1:, 1:] = free.reshape(-1, 2, 2)
    batch = np.tile(batch, (50, 1, 1))
    star = np.ascontiguousarray(induced_op(big, ENGEL_SQUARE).star)
    seed = np.zeros(big.size, dtype=bool)
    seed[[1, 11]] = True
    return {
        "assoc_violation": (big.table,),
        "assoc_mask_batch": (batch,),
        "identity_candidates": (big.table,),
        "decomposition_counts": (ext.X.table, ext.K.elements, np.ascontiguousarray(ext.sf), False),
        "power_table": (big.table, big.inverse, big.identity, 12),
        "eval_word": (big.table, big.inverse, big.identity, np.ascontiguousarray(ENGEL_SQUARE.array)),
        "column_inverse": (star,),
        "closure": (big.table, seed),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def bench(repeat: int):
    rows = []
    for name, args in cases().items():
        impls = K.implementations(name)
        outs = {b: fn(*args) for b, fn in impls.items()}          # warm-up
        agree = same(outs["numba"], outs["numpy"]) if name != "column_inverse" else same(outs["numba"][1:], outs["numpy"][1:])
        times = {}
        for b, fn in impls.items():
            t = timeit.Timer(lambda fn=fn: fn(*args))
            n, _ = t.autorange()
            times[b] = min(t.repeat(repeat, n)) / n
        rows.append((name, times["numba"], times["numpy"], agree))
    return rows


def e2e():
    out = {}
    for backend, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, SCHREIERLAB_DISABLE_JIT=flag)
        cmd = [sys.executable, "-m", "schreierlab", "sweep", "--format", "structured"]
        subprocess.run(cmd, env=env, capture_output=True, check=True)   # fill the JIT cache
        t0 = time.perf_counter()
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        out[backend] = (time.perf_counter() - t0, proc.stdout)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--e2e", action="store_true", help="also time a full sweep under each backend")
    args = ap.parse_args()

    print(f"{'kernel':22s} {'numba':>12s} {'numpy':>12s} {'speedup':>8s}  agree")
    for name, tn, tp, agree in bench(args.repeat):
        print(f"{name:22s} {tn * 1e6:10.1f}us {tp * 1e6:10.1f}us {tp / tn:7.1f}x  {'yes' if agree else 'NO'}")
    if args.e2e:
        res = e2e()
        print()
        for b, (secs, _) in res.items():
            print(f"sweep ({b}): {secs:.2f} s")
        print("sweep reports identical:", res["numba"][1] == res["numpy"][1])


if __name__ == "__main__":
    main()
