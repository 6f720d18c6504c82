"""Shared helpers: seeded random wallspaces and independent set-based oracles.

The oracles deliberately use plain python sets over point names, never the
library's bitmask machinery, so that every fast path is checked against an
independent reimplementation of the definitions.
"""

import random
from itertools import combinations

import numpy as np

from wallcube.metric import Metric
from wallcube.wallspace import Wall, Wallspace


def random_wallspace(seed, max_points=8, max_walls=8, with_metric=True):
    """A random valid wallspace: coverage always holds, duplicate genuine
    partitions are avoided, a random connected unit-weight graph metric is
    attached when requested."""
    rng = random.Random(seed)
    npts = rng.randint(2, max_points)
    nwalls = rng.randint(1, max_walls)
    points = [f"p{i}" for i in range(npts)]
    full = (1 << npts) - 1
    walls = []
    seen_partitions = set()
    idx = 0
    tries = 0
    while len(walls) < nwalls and tries < 200:
        tries += 1
        u = rng.randint(1, full)
        v = (full & ~u) | (u & rng.randint(0, full))
        if v == 0:
            v = 1 << rng.randrange(npts)
        if rng.random() < 0.15:
            u = full  # some vacuous / wide walls
        if u & v == 0:
            key = frozenset((u, v))
            if key in seen_partitions:
                continue
            seen_partitions.add(key)
        walls.append(Wall(idx, u, v))
        idx += 1
    metric = random_metric(rng, npts) if with_metric else None
    return Wallspace(points, walls, metric=metric)


def random_metric(rng, npts):
    """Random connected unit-weight graph: a random tree plus extra edges."""
    edges = set()
    for i in range(1, npts):
        edges.add((rng.randrange(i), i))
    extra = rng.randint(0, npts)
    for _ in range(extra):
        a, b = rng.randrange(npts), rng.randrange(npts)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Metric.from_edges(npts, [(a, b, 1) for a, b in edges])


# -- set-based oracles -------------------------------------------------


def halfspace_sets(ws, w):
    return set(ws.names_of(w.left)), set(ws.names_of(w.right))


def oracle_separation_count(ws, x, y):
    n = 0
    for w in ws.walls:
        u, v = halfspace_sets(ws, w)
        ou, ov = u - v, v - u
        if (x in ou and y in ov) or (x in ov and y in ou):
            n += 1
    return n


def oracle_betwixt(ws, x):
    out = set()
    for w in ws.walls:
        u, v = halfspace_sets(ws, w)
        if x in u and x in v:
            out.add(w.index)
    return out


def oracle_transverse(ws, i, j):
    ui, vi = halfspace_sets(ws, ws.wall(i))
    uj, vj = halfspace_sets(ws, ws.wall(j))
    return all([ui & uj, ui & vj, vi & uj, vi & vj])


def oracle_wall_separates(ws, k, i, j):
    wk = ws.wall(k)
    u, v = halfspace_sets(ws, wk)
    ou, ov = u - v, v - u
    sides_i = [set(ws.names_of(h)) for h in ws.wall(i).halfspaces()]
    sides_j = [set(ws.names_of(h)) for h in ws.wall(j).halfspaces()]
    for a in sides_i:
        for b in sides_j:
            if (a <= ou and b <= ov) or (a <= ov and b <= ou):
                return True
    return False


def oracle_is_zero_cube(ws, mask):
    """Chosen halfspaces pairwise intersect, including each with itself."""
    chosen = []
    for pos, w in enumerate(ws.walls):
        side = w.right if (mask >> pos) & 1 else w.left
        chosen.append(set(ws.names_of(side)))
    for a in range(len(chosen)):
        for b in range(a, len(chosen)):
            if not chosen[a] & chosen[b]:
                return False
    return True


def oracle_all_vertices(ws):
    return sorted(m for m in range(1 << ws.nwalls())
                  if oracle_is_zero_cube(ws, m))


def oracle_max_transverse_families(ws):
    """Brute force over all subsets of nonvacuous walls."""
    idxs = [w.index for w in ws.walls if not w.is_vacuous(ws.full)]
    cliques = []
    for r in range(1, len(idxs) + 1):
        for sub in combinations(idxs, r):
            if all(oracle_transverse(ws, a, b)
                   for a, b in combinations(sub, 2)):
                cliques.append(set(sub))
    maximal = [c for c in cliques
               if not any(c < c2 for c2 in cliques)]
    return sorted(tuple(sorted(c)) for c in maximal)


def graph_distance(vertices, a, b):
    """BFS distance in the single-wall-flip graph on the given vertex set."""
    from collections import deque
    vset = set(vertices)
    nbits = max(vset).bit_length() if vset else 0
    dist = {a: 0}
    q = deque([a])
    while q:
        m = q.popleft()
        if m == b:
            return dist[m]
        for i in range(nbits + 1):
            m2 = m ^ (1 << i)
            if m2 in vset and m2 not in dist:
                dist[m2] = dist[m] + 1
                q.append(m2)
    return dist.get(b)
