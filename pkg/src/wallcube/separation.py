"""Metric separation diagnostics.

All thresholds are computed exactly over the finite instance: the candidate
threshold values are the distances that actually occur, so "least m such
that ..." is a finite search.  Every report carries its witnesses, and every
witness re-validates under a from-scratch definition scan (tested).

Distance to a wall uses the wall's carrier U ∩ V when nonempty, otherwise
the union of the frontiers of U and V in the metric graph.  The paper writes
d(K, W) without defining it for abstract walls; this documented choice
coincides with the geometric wall in all geometric cases and is recorded in
every report.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .errors import NotAnAutomorphism, WallcubeError
from .metric import INF, bits
from .wallspace import (
    separation_count,
    subwallspace,
    transverse,
    wall_separates_walls,
)

WALL_DISTANCE_NOTE = "wall distance = min over carrier U∩V, else frontiers"


def wall_region(ws, wall_index):
    """The point set standing in for a wall: carrier, else both frontiers."""
    w = ws.wall(wall_index)
    c = w.carrier()
    if c:
        return c
    metric = ws.require_metric()
    return metric.frontier(w.left) | metric.frontier(w.right)


def wall_distance(ws, mask, wall_index):
    return ws.require_metric().dist_sets(mask, wall_region(ws, wall_index))


def _separates_sets(ws, wall_index, mask_a, mask_b):
    """Sets lie in distinct open halfspaces of the wall.  Empty sets are
    vacuously separated."""
    w = ws.wall(wall_index)
    ol, orr = w.open_left(), w.open_right()
    return (mask_a & ~ol == 0 and mask_b & ~orr == 0) or \
        (mask_a & ~orr == 0 and mask_b & ~ol == 0)


@dataclass
class SeparationReport:
    property: str
    parameters: dict
    verdict: str        # "holds" | "fails"
    value: float = None
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def holds(self):
        return self.verdict == "holds"

    def to_dict(self):
        return {"property": self.property, "parameters": self.parameters,
                "verdict": self.verdict, "value": self.value,
                "witnesses": self.witnesses, "notes": self.notes}


def _least_threshold(items, bound):
    """items: list of (distance, separated, witness).

    Returns (least t <= bound such that distance > t implies separated,
    witnesses at the worst offending distance) — t is the max unseparated
    distance (0 when none).  When t > bound, no usable threshold exists.
    """
    unsep = [(d, w) for d, sep, w in items if not sep]
    if not unsep:
        return 0, []
    t = max(d for d, _w in unsep)
    return t, sorted(w for d, w in unsep if d == t)


def linear_separation_fit(ws, sample_pairs=None, max_denominator=64,
                          max_offset=0.0):
    """Largest rational κ = p/q (q <= max_denominator) with
    #(x,y) >= κ·d(x,y) − ε on all sampled pairs for some ε <= max_offset;
    ε* is then the minimal offset for that κ.

    On finite data *any* κ works for a large enough ε, so the offset must be
    bounded for the fit to mean anything; max_offset defaults to 0.
    """
    metric = ws.require_metric()
    pts = list(ws.points)
    if sample_pairs is None:
        sample_pairs = [(pts[i], pts[j]) for i in range(len(pts))
                        for j in range(i + 1, len(pts))]
    data = []
    for x, y in sample_pairs:
        d = metric.d(ws.point_index[x], ws.point_index[y])
        data.append((x, y, d, separation_count(ws, x, y)))
    params = {"max_denominator": max_denominator, "max_offset": max_offset,
              "pairs": len(data)}
    pos = [(x, y, d, s) for x, y, d, s in data if d > 0]
    if not pos:
        return SeparationReport("LinearSeparation", params, "holds",
                                value=None, notes=["no pairs at positive distance"])
    # feasible κ <= (s + max_offset) / d on every pair
    kmax = min(Fraction(s + max_offset) / Fraction(d) for _x, _y, d, s in pos)
    binding = sorted([x, y] for x, y, d, s in pos
                     if Fraction(s + max_offset) / Fraction(d) == kmax)
    params["binding_pairs"] = len(binding)
    binding = binding[:20]
    if kmax <= 0:
        return SeparationReport(
            "LinearSeparation", params, "fails", value=0.0,
            witnesses=binding,
            notes=["no κ > 0 admits ε <= max_offset"])
    kappa = Fraction(kmax).limit_denominator(max_denominator)
    if kappa > kmax:
        # limit_denominator may round up; step down on the Stern-Brocot grid
        kappa = Fraction(
            (kmax.numerator * max_denominator) // kmax.denominator,
            max_denominator)
        while kappa > kmax:
            kappa -= Fraction(1, max_denominator)
    if kappa <= 0:
        return SeparationReport(
            "LinearSeparation", params, "fails", value=0.0,
            witnesses=binding,
            notes=[f"feasible κ below grid resolution 1/{max_denominator}"])
    eps = max(max(0.0, float(kappa) * d - s) for _x, _y, d, s in pos)
    rep = SeparationReport("LinearSeparation", params, "holds",
                           value=float(kappa), witnesses=binding)
    rep.parameters["kappa"] = [kappa.numerator, kappa.denominator]
    rep.parameters["epsilon"] = eps
    return rep


def ball_ball_separation(ws, r):
    """Least m with: d(x1,x2) > m implies N_r(x1), N_r(x2) separated by a
    wall.  Fails when even the farthest pairs are unseparated."""
    metric = ws.require_metric()
    items = []
    for i in range(len(ws.points)):
        for j in range(i + 1, len(ws.points)):
            ball_i = metric.ball(1 << i, r)
            ball_j = metric.ball(1 << j, r)
            sep = any(_separates_sets(ws, w.index, ball_i, ball_j)
                      for w in ws.walls)
            items.append((metric.d(i, j), sep,
                          [ws.points[i], ws.points[j]]))
    diam = metric.diameter()
    m, witnesses = _least_threshold(items, diam)
    verdict = "holds" if m < diam or not witnesses else "fails"
    return SeparationReport("BallBall", {"r": r}, verdict, value=m,
                            witnesses=witnesses)


def compact_wall_separation(ws, K):
    """Least f with: d(K, W) >= f implies some other wall separates K from W
    (K in one open halfspace of W', a closed halfspace of W in the other)."""
    metric = ws.require_metric()
    kmask = K if isinstance(K, int) else ws.mask_of(K)
    if not kmask:
        raise WallcubeError("K must be nonempty")
    items = []
    for w in ws.walls:
        d = wall_distance(ws, kmask, w.index)
        sep = any(_separates_compact_wall(ws, w2.index, kmask, w.index)
                  for w2 in ws.walls if w2.index != w.index)
        items.append((d, sep, [w.index]))
    diam = metric.diameter()
    # least f: every wall with d >= f separated; f may sit just above the
    # worst unseparated distance
    unsep = [(d, wit) for d, sep, wit in items if not sep]
    if not unsep:
        f, witnesses = 0, []
    else:
        worst = max(d for d, _ in unsep)
        higher = [d for d, sep, _ in items if d > worst]
        f = min(higher) if higher else worst + 1
        witnesses = sorted(wit for d, wit in unsep if d == worst)
    verdict = "holds" if f <= diam or not witnesses else "fails"
    return SeparationReport("CompactWall",
                            {"K": sorted(ws.names_of(kmask))},
                            verdict, value=f, witnesses=witnesses,
                            notes=[WALL_DISTANCE_NOTE])


def _separates_compact_wall(ws, sep_index, kmask, wall_index):
    wsep = ws.wall(sep_index)
    w = ws.wall(wall_index)
    ol, orr = wsep.open_left(), wsep.open_right()
    for kside, wside in ((ol, orr), (orr, ol)):
        if kmask & ~kside:
            continue
        if any(h & ~wside == 0 for h in w.halfspaces()):
            return True
    return False


def wall_wall_separation(ws):
    """Least D with: d(W,W') > D implies some wall separates W and W'."""
    metric = ws.require_metric()
    items = []
    idxs = ws.wall_indices()
    for a in range(len(idxs)):
        for b in range(a + 1, len(idxs)):
            i, j = idxs[a], idxs[b]
            d = metric.dist_sets(wall_region(ws, i), wall_region(ws, j))
            sep = any(wall_separates_walls(ws, k, i, j)
                      for k in idxs if k not in (i, j))
            items.append((d, sep, [i, j]))
    diam = metric.diameter()
    D, witnesses = _least_threshold(items, diam)
    verdict = "holds" if D < diam or not witnesses else "fails"
    return SeparationReport("WallWall", {}, verdict, value=D,
                            witnesses=witnesses, notes=[WALL_DISTANCE_NOTE])


def subspace_separation(ws, Y, kind, r):
    """Ball-WallNbd / WallNbd-WallNbd separation of a subspace Y.

    Sets are intersected with Y and separation is by an induced wall of the
    subwallspace on Y; empty sets are vacuously separated.
    """
    if kind not in ("BallWallNbd", "WallNbdWallNbd"):
        raise WallcubeError(f"unknown kind {kind}")
    metric = ws.require_metric()
    ymask = Y if isinstance(Y, int) else ws.mask_of(Y)
    sub = subwallspace(ws, ymask)
    yidx = bits(ymask)
    remap = {old: new for new, old in enumerate(yidx)}

    def to_sub(mask):
        out = 0
        for b in bits(mask & ymask):
            out |= 1 << remap[b]
        return out

    def sub_separated(mask_a, mask_b):
        a, b = to_sub(mask_a), to_sub(mask_b)
        if a == 0 or b == 0:
            return True  # "any wall separates them"
        return any(_separates_sets(sub, w.index, a, b) for w in sub.walls)

    items = []
    if kind == "BallWallNbd":
        for p in bits(ymask):
            for w in ws.walls:
                a = metric.ball(1 << p, r) & ymask
                b = metric.ball(wall_region(ws, w.index), r) & ymask
                d = metric.dist_sets(a, b)
                items.append((0 if d == INF else d, sub_separated(a, b),
                              [ws.points[p], w.index]))
    else:
        idxs = ws.wall_indices()
        for x in range(len(idxs)):
            for y in range(x + 1, len(idxs)):
                i, j = idxs[x], idxs[y]
                a = metric.ball(wall_region(ws, i), r) & ymask
                b = metric.ball(wall_region(ws, j), r) & ymask
                d = metric.dist_sets(a, b)
                items.append((0 if d == INF else d, sub_separated(a, b),
                              [i, j]))
    diam = metric.diameter()
    s, witnesses = _least_threshold(items, diam)
    verdict = "holds" if s < diam or not witnesses else "fails"
    return SeparationReport(kind, {"r": r, "Y": sorted(ws.names_of(ymask))},
                            verdict, value=s, witnesses=witnesses,
                            notes=[WALL_DISTANCE_NOTE])


@dataclass
class PackingReport:
    D: float
    k: int
    witness_family: list

    def to_dict(self):
        return {"D": self.D, "k": self.k,
                "witness_family": self.witness_family}


def bounded_packing_number(ws, subsets, D):
    """Max family of the given point subsets that is pairwise D-close
    (d <= D), found by exhaustive clique search."""
    metric = ws.require_metric()
    masks = [s if isinstance(s, int) else ws.mask_of(s) for s in subsets]
    g = nx.Graph()
    g.add_nodes_from(range(len(masks)))
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if metric.dist_sets(masks[i], masks[j]) <= D:
                g.add_edge(i, j)
    best = []
    for c in nx.find_cliques(g):
        if len(c) > len(best):
            best = c
    return PackingReport(D=D, k=len(best), witness_family=sorted(best))


def axis_cut_test(ws, action, w_index, n_max, cc=None):
    """Evaluate the axis-cut premises for a (partial) automorphism g.

    For 0 < |n| <= n_max where g^n is defined on the wall:
      (1) g^n W != W (as indexed walls)
      (2) U ∩ g^n U nonempty
      (3) V ∩ g^n V nonempty
    plus: pairwise transversality of the defined translates {g^m W}, and the
    fixed vertices of g in cc (when given).  Only the premises are checkable
    at finite scale; the theorem's conclusion concerns infinite families.
    """
    action.check(ws)
    w = ws.wall(w_index)
    conds = {}
    translates = {0: w_index}
    for n in range(1, n_max + 1):
        for sign in (1, -1):
            nn = sign * n
            img = action.wall_power(w_index, nn)
            if img is None:
                continue
            j, swap = img
            translates[nn] = j
            wj = ws.wall(j)
            u_img, v_img = (wj.right, wj.left) if swap else (wj.left, wj.right)
            pm = action.point_mask_power(ws, nn)
            gu = pm(w.left)
            gv = pm(w.right)
            conds[nn] = {
                "wall_moves": j != w_index,
                "U_overlaps": bool(w.left & gu),
                "V_overlaps": bool(w.right & gv),
                "image_wall": j,
            }
            # sanity: the image halfspaces agree with the mapped wall where
            # the point map is defined
            dom = pm(ws.full)
            if gu & dom & ~u_img or gv & dom & ~v_img:
                raise NotAnAutomorphism(
                    f"power {nn} maps wall {w_index} inconsistently")
    tidx = sorted(set(translates.values()))
    pairwise = all(transverse(ws, a, b)
                   for x, a in enumerate(tidx) for b in tidx[x + 1:])
    fixed = []
    if cc is not None:
        fixed = [m for m in cc.vertices if action.fixes_vertex(ws, m)]
    return {"wall": w_index, "n_max": n_max, "conditions": conds,
            "translates": tidx,
            "translates_pairwise_transverse": pairwise if len(tidx) > 1 else None,
            "fixed_vertices": fixed,
            "note": "premises only; the conclusion concerns infinite scale"}
