"""Hot kernel: enumerate all valid orientations of a wallspace.

The search space is 2^n orientation bitmasks (n = wall count).  An orientation
m is valid when, for every wall i with chosen side s, no wall j's chosen side
is disjoint from it.  Disjointness is precompiled into four n-vectors of
conflict bitmasks:

    conf[s][t][i] = bitmask of walls j whose side-t halfspace is disjoint
                    from the side-s halfspace of wall i

(the tables include j = i, so an empty chosen halfspace conflicts with
itself, which is exactly the rule that bans orienting a vacuous wall to its
empty side).

Two implementations are provided: a numba @njit loop and a vectorized numpy
fallback.  Selection: numba when importable, unless the environment variable
WALLCUBE_NO_NUMBA is set to a nonempty value.  Both are exercised by the test
suite and compared by benchmarks/bench_kernels.py.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def use_numba():
    return HAVE_NUMBA and not os.environ.get("WALLCUBE_NO_NUMBA")


def conflict_tables(lefts, rights):
    """Build the four conflict tables from halfspace bitmask lists."""
    n = len(lefts)
    sides = (lefts, rights)
    conf = [[[0] * n for _ in range(2)] for _ in range(2)]
    for s in range(2):
        for t in range(2):
            for i in range(n):
                m = 0
                for j in range(n):
                    if sides[s][i] & sides[t][j] == 0:
                        m |= 1 << j
                conf[s][t][i] = m
    return conf


def is_valid(m, conf, n):
    """Validity of a single orientation bitmask (pure-python reference)."""
    for i in range(n):
        s = (m >> i) & 1
        bad = (conf[s][0][i] & ~m) | (conf[s][1][i] & m)
        if bad:
            return False
    return True


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _enumerate_numba(c00, c01, c10, c11, n):
        total = np.int64(1) << n
        out = np.empty(total, dtype=np.uint64)
        cnt = 0
        for m in range(total):
            um = np.uint64(m)
            ok = True
            for i in range(n):
                if (um >> np.uint64(i)) & np.uint64(1):
                    bad = (c10[i] & ~um) | (c11[i] & um)
                else:
                    bad = (c00[i] & ~um) | (c01[i] & um)
                if bad & np.uint64(total - 1):
                    ok = False
                    break
            if ok:
                out[cnt] = um
                cnt += 1
        return out[:cnt]


def _enumerate_numpy(c00, c01, c10, c11, n):
    total = 1 << n
    masks = np.arange(total, dtype=np.uint64)
    ok = np.ones(total, dtype=bool)
    full = np.uint64(total - 1)
    for i in range(n):
        s = (masks >> np.uint64(i)) & np.uint64(1)
        selL = np.where(s == 0, c00[i], c10[i])
        selR = np.where(s == 0, c01[i], c11[i])
        bad = ((selL & ~masks) | (selR & masks)) & full
        ok &= bad == 0
    return masks[ok]


def enumerate_valid(lefts, rights):
    """All valid orientation bitmasks, ascending, as a python int list.

    Only usable for wall counts small enough that 2^n fits the caller's
    budget; the caller enforces the cap.
    """
    n = len(lefts)
    if n == 0:
        return [0]
    conf = conflict_tables(lefts, rights)
    if n > 63:
        # big-int fallback, practically unreachable under the default caps
        return [m for m in range(1 << n) if is_valid(m, conf, n)]
    c00 = np.array(conf[0][0], dtype=np.uint64)
    c01 = np.array(conf[0][1], dtype=np.uint64)
    c10 = np.array(conf[1][0], dtype=np.uint64)
    c11 = np.array(conf[1][1], dtype=np.uint64)
    if use_numba():
        out = _enumerate_numba(c00, c01, c10, c11, n)
    else:
        out = _enumerate_numpy(c00, c01, c10, c11, n)
    return [int(m) for m in out]
