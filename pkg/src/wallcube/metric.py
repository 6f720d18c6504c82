"""Optional metric attached to a ground set.

A metric is either given as an explicit symmetric distance table or as a
weighted graph whose path metric is taken (shortest paths via scipy).  Set
arguments are bitmasks over the point ordering, matching the rest of the
library.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import WallcubeError

INF = float("inf")


def bits(mask):
    """Indices of set bits in an int bitmask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return mask.bit_count()


class Metric:
    """Symmetric distance table, optionally backed by a graph."""

    def __init__(self, dist, edges=None):
        dist = np.asarray(dist, dtype=float)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise WallcubeError("metric table must be square")
        if not np.allclose(dist, dist.T):
            raise WallcubeError("metric table must be symmetric")
        if np.any(np.diag(dist) != 0):
            raise WallcubeError("metric table must have zero diagonal")
        if np.any(dist[np.isfinite(dist)] < 0):
            raise WallcubeError("metric table must be nonnegative")
        self.dist = dist
        self.n = dist.shape[0]
        # edges: list of (i, j, weight) when the metric came from a graph
        self.edges = list(edges) if edges is not None else None
        self._adj = None

    @classmethod
    def from_edges(cls, n, edges):
        """Path metric of a weighted graph on n vertices; edges = (i, j, w)."""
        rows, cols, data = [], [], []
        for i, j, w in edges:
            rows += [i, j]
            cols += [j, i]
            data += [w, w]
        g = csr_matrix((data, (rows, cols)), shape=(n, n))
        dist = shortest_path(g, method="D", directed=False)
        return cls(dist, edges=edges)

    def d(self, i, j):
        return self.dist[i, j]

    def adjacency(self):
        """Neighbor lists of the metric graph.

        When no graph was supplied the unit-distance graph is used (pairs at
        the minimum positive distance), which is the documented fallback for
        frontier computations.
        """
        if self._adj is None:
            adj = [set() for _ in range(self.n)]
            if self.edges is not None:
                for i, j, _w in self.edges:
                    adj[i].add(j)
                    adj[j].add(i)
            else:
                finite = self.dist[np.isfinite(self.dist) & (self.dist > 0)]
                if finite.size:
                    unit = finite.min()
                    for i in range(self.n):
                        for j in range(i + 1, self.n):
                            if self.dist[i, j] == unit:
                                adj[i].add(j)
                                adj[j].add(i)
            self._adj = adj
        return self._adj

    def ball(self, mask, r):
        """Bitmask of points within distance r of the set `mask`."""
        idx = bits(mask)
        if not idx:
            return 0
        near = self.dist[idx].min(axis=0) <= r
        out = 0
        for i in np.nonzero(near)[0]:
            out |= 1 << int(i)
        return out

    def diam(self, mask):
        """Diameter of a point set; None when empty."""
        idx = bits(mask)
        if not idx:
            return None
        sub = self.dist[np.ix_(idx, idx)]
        return float(sub.max())

    def dist_sets(self, mask_a, mask_b):
        """min distance between two point sets; inf when either is empty."""
        a, b = bits(mask_a), bits(mask_b)
        if not a or not b:
            return INF
        return float(self.dist[np.ix_(a, b)].min())

    def frontier(self, mask):
        """Points of `mask` adjacent (in the metric graph) to its complement."""
        adj = self.adjacency()
        out = 0
        for i in bits(mask):
            for j in adj[i]:
                if not (mask >> j) & 1:
                    out |= 1 << i
                    break
        return out

    def diameter(self):
        return float(self.dist.max()) if self.n else 0.0
