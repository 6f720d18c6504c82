"""Deterministic example wallspaces.

fig3          the six-point, five-wall example with one 3-cube
grid(n)       (n+1) x (n+1) lattice with the 2n coordinate line walls, L1 metric
rbad(n)       finite line analogue: interval walls every n steps along
              {0..n^2} plus a singleton wall at every point
nonHausdorff3 X = {x,y,z} with the single wall ({x,z},{y,z})
geomPath(n)   geometric wallspace of the path graph 0-1-...-n
cayley(...)   Cayley-ball systems, see the groups module
"""

import numpy as np

from .errors import UnknownGenerator
from .metric import Metric
from .wallspace import Wall, Wallspace, from_geometric_walls


def fig3():
    """Six points a..f; walls 3 and 5 are duplicates, wall 4 is the only
    genuine partition; the dual complex has a single 3-cube."""
    points = ["a", "b", "c", "d", "e", "f"]

    def m(names):
        return sum(1 << points.index(p) for p in names)

    walls = [
        Wall(1, m("abf"), m("bcde")),
        Wall(2, m("ab"), m("acdef")),
        Wall(3, m("abcef"), m("de")),
        Wall(4, m("abce"), m("df")),
        Wall(5, m("abcef"), m("de")),
    ]
    return Wallspace(points, walls)


def grid(n):
    """(n+1)^2 lattice points "i,j"; vertical wall k: {i < k} | {i >= k},
    horizontal wall k likewise; all walls genuine partitions; L1 metric."""
    points = [f"{i},{j}" for i in range(n + 1) for j in range(n + 1)]
    pidx = {p: t for t, p in enumerate(points)}
    coords = [(i, j) for i in range(n + 1) for j in range(n + 1)]

    def mask(pred):
        return sum(1 << pidx[f"{i},{j}"] for i, j in coords if pred(i, j))

    walls = []
    idx = 0
    for k in range(1, n + 1):
        walls.append(Wall(idx, mask(lambda i, j, k=k: i < k),
                          mask(lambda i, j, k=k: i >= k)))
        idx += 1
    for k in range(1, n + 1):
        walls.append(Wall(idx, mask(lambda i, j, k=k: j < k),
                          mask(lambda i, j, k=k: j >= k)))
        idx += 1
    npts = len(points)
    dist = np.zeros((npts, npts))
    for a, (i1, j1) in enumerate(coords):
        for b, (i2, j2) in enumerate(coords):
            dist[a, b] = abs(i1 - i2) + abs(j1 - j2)
    edges = [(pidx[f"{i},{j}"], pidx[f"{i2},{j2}"], 1)
             for i, j in coords for i2, j2 in coords
             if (abs(i - i2), abs(j - j2)) in ((0, 1), (1, 0))
             and (i, j) < (i2, j2)]
    return Wallspace(points, walls, metric=Metric(dist, edges=edges))


def rbad(n):
    """Finite sample of the line-with-singleton-walls example.

    Points 0..n^2 on a line; overlapping interval walls {<= k} | {>= k} at
    every multiple k of n; a singleton wall {r} | X - {r} at every point.
    The dual is a path of edges-with-squares plus pendant edges whose count
    per line vertex grows linearly with n, while compact-wall separation
    stays finite.
    """
    npts = n * n + 1
    points = [str(i) for i in range(npts)]
    full = (1 << npts) - 1
    walls = []
    idx = 0
    for k in range(0, npts, n):
        le = (1 << (k + 1)) - 1            # {0..k}
        ge = full & ~((1 << k) - 1)        # {k..}
        walls.append(Wall(idx, le, ge))
        idx += 1
    for r in range(npts):
        walls.append(Wall(idx, 1 << r, full & ~(1 << r)))
        idx += 1
    dist = np.abs(np.subtract.outer(np.arange(npts), np.arange(npts))).astype(float)
    edges = [(i, i + 1, 1) for i in range(npts - 1)]
    return Wallspace(points, walls, metric=Metric(dist, edges=edges),
                     max_points=max(64, npts), max_walls=max(64, len(walls)))


def non_hausdorff3():
    """The 3-point example with #(x,y)=1 but #(x,z)=#(y,z)=0; metric from
    the path x - z - y."""
    points = ["x", "y", "z"]
    walls = [Wall(0, 0b101, 0b110)]  # ({x,z},{y,z})
    metric = Metric.from_edges(3, [(0, 2, 1), (1, 2, 1)])
    return Wallspace(points, walls, metric=metric)


def geom_path(n):
    """Geometric wallspace of the path 0-1-...-n: one single-vertex wall at
    each interior vertex."""
    points = [str(i) for i in range(n + 1)]
    edges = [(str(i), str(i + 1)) for i in range(n)]
    wall_subsets = [[str(k)] for k in range(1, n)]
    return from_geometric_walls(points, edges, wall_subsets)


def generate(name, *args):
    if name == "fig3":
        return fig3()
    if name == "grid":
        return grid(int(args[0]))
    if name == "rbad":
        return rbad(int(args[0]))
    if name == "nonHausdorff3":
        return non_hausdorff3()
    if name == "geomPath":
        return geom_path(int(args[0]))
    raise UnknownGenerator(name)
