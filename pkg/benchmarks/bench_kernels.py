"""Benchmark the orientation-enumeration kernel: numba @njit vs numpy fallback.

Run: python benchmarks/bench_kernels.py --size 5 --repeats 3
(size n gives an n x n grid wallspace with 2n walls, so a 2^(2n) search space)
"""
import argparse
import time

import numpy as np

from wallcube.generators import grid
from wallcube.kernels import (
    HAVE_NUMBA,
    _enumerate_numpy,
    conflict_tables,
)


def tables_for(n):
    ws = grid(n)
    lefts = [w.left for w in ws.walls]
    rights = [w.right for w in ws.walls]
    conf = conflict_tables(lefts, rights)
    arrs = tuple(np.array(conf[s][t], dtype=np.uint64)
                 for s in range(2) for t in range(2))
    return arrs, len(lefts)


def run_once(func, arrs, n):
    t0 = time.perf_counter()
    out = func(*arrs, n)
    t1 = time.perf_counter()
    return (t1 - t0) * 1000.0, out


def main():
    p = argparse.ArgumentParser()
    p.add_argument('--size', type=int, default=7,
                   help='grid side length, max 7 (wall count is 2*size)')
    p.add_argument('--repeats', type=int, default=3)
    args = p.parse_args()

    arrs, n = tables_for(args.size)
    print(f'grid({args.size}): {n} walls, search space 2^{n} = {1 << n}')

    t_np = 0.0
    ref = None
    for _ in range(args.repeats):
        t, out = run_once(_enumerate_numpy, arrs, n)
        t_np += t
        ref = out
    print('numpy total ms: {:.3f}  ({} valid orientations)'.format(
        t_np, len(ref)))

    if not HAVE_NUMBA:
        print('numba not installed; skipping jit benchmark')
        return

    from wallcube.kernels import _enumerate_numba
    # warm up (compilation)
    _enumerate_numba(*arrs, n)
    t_nb = 0.0
    for _ in range(args.repeats):
        t, out = run_once(_enumerate_numba, arrs, n)
        t_nb += t
    assert list(out) == list(ref), 'kernel outputs disagree'
    print('numba total ms: {:.3f}'.format(t_nb))
    print('speedup: {:.2f}x'.format(t_np / max(1e-9, t_nb)))


if __name__ == '__main__':
    main()
