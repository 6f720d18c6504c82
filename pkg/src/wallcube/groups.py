"""Cayley-ball wallspaces with H-walls for concrete group families.

Supported groups have exact normal forms, so the word problem and the word
metric are computed exactly (not approximated inside the ball):

  * FreeAbelian(d): elements are integer tuples, generators ±e_i, L1 length.
  * Free(rank):     elements are reduced words over a, b, ... with inverses
                    written as uppercase letters.
  * FreeProduct:    syllable sequences over the factors.

Everything built from a ball is truncated to the ball, and every truncation
effect is reported, never silently passed.
"""

from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import (
    NotAnAutomorphism,
    StateSpaceCap,
    UnknownGenerator,
    WallcubeError,
)
from .metric import Metric, bits
from .wallspace import Wall, Wallspace

TRUNCATION_CAVEAT = ("all conclusions are radius-limited: computed on a "
                     "finite ball of an infinite group")


# -- group families ----------------------------------------------------


class FreeAbelian:
    kind = "FreeAbelian"

    def __init__(self, d):
        if d < 1:
            raise WallcubeError("need d >= 1")
        self.d = d

    def identity(self):
        return (0,) * self.d

    def generators(self):
        gens = []
        for i in range(self.d):
            e = [0] * self.d
            e[i] = 1
            gens.append(tuple(e))
            e[i] = -1
            gens.append(tuple(e))
        return gens

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def length(self, a):
        return sum(abs(x) for x in a)

    def name(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"

    def to_dict(self):
        return {"kind": self.kind, "d": self.d}


class Free:
    kind = "Free"

    def __init__(self, rank):
        if rank < 1 or rank > 26:
            raise WallcubeError("need 1 <= rank <= 26")
        self.rank = rank
        self.letters = "abcdefghijklmnopqrstuvwxyz"[:rank]

    def identity(self):
        return ""

    def generators(self):
        return [c for c in self.letters] + [c.upper() for c in self.letters]

    def mul(self, a, b):
        out = list(a)
        for c in b:
            if out and out[-1] == c.swapcase():
                out.pop()
            else:
                out.append(c)
        return "".join(out)

    def inv(self, a):
        return "".join(c.swapcase() for c in reversed(a))

    def length(self, a):
        return len(a)

    def name(self, a):
        return a if a else "1"

    def to_dict(self):
        return {"kind": self.kind, "rank": self.rank}


class FreeProduct:
    """Free product of the given factor specs; elements are tuples of
    syllables (factor position, factor element)."""

    kind = "FreeProduct"

    def __init__(self, factors):
        if len(factors) < 2:
            raise WallcubeError("need at least two factors")
        self.factors = list(factors)

    def identity(self):
        return ()

    def generators(self):
        gens = []
        for i, f in enumerate(self.factors):
            for g in f.generators():
                gens.append(((i, g),))
        return gens

    def mul(self, a, b):
        out = list(a)
        for syl in b:
            if out and out[-1][0] == syl[0]:
                i = syl[0]
                merged = self.factors[i].mul(out[-1][1], syl[1])
                out.pop()
                if merged != self.factors[i].identity():
                    out.append((i, merged))
            else:
                out.append(syl)
        return tuple(out)

    def inv(self, a):
        return tuple((i, self.factors[i].inv(g)) for i, g in reversed(a))

    def length(self, a):
        return sum(self.factors[i].length(g) for i, g in a)

    def name(self, a):
        if not a:
            return "1"
        return "*".join(f"{i}:{self.factors[i].name(g)}" for i, g in a)

    def to_dict(self):
        return {"kind": self.kind,
                "factors": [f.to_dict() for f in self.factors]}


def group_from_dict(d):
    kind = d["kind"]
    if kind == "FreeAbelian":
        return FreeAbelian(d["d"])
    if kind == "Free":
        return Free(d["rank"])
    if kind == "FreeProduct":
        return FreeProduct([group_from_dict(f) for f in d["factors"]])
    raise UnknownGenerator(kind)


# -- Cayley balls ------------------------------------------------------


class CayleyBall:
    """Ball of given radius in the word metric; metric exact via normal
    forms, edges generator-labelled within the ball."""

    def __init__(self, spec, radius, elements):
        self.spec = spec
        self.radius = radius
        self.elements = elements  # sorted by (length, name)
        self.names = [spec.name(g) for g in elements]
        self.by_name = {n: i for i, n in enumerate(self.names)}
        self.by_elem = {g: i for i, g in enumerate(elements)}
        n = len(elements)
        dist = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d = spec.length(spec.mul(spec.inv(elements[i]), elements[j]))
                dist[i, j] = dist[j, i] = d
        edges = []
        for i, g in enumerate(elements):
            for s in spec.generators():
                h = spec.mul(g, s)
                j = self.by_elem.get(h)
                if j is not None and i < j:
                    edges.append((i, j, 1))
        self.metric = Metric(dist, edges=edges)
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(n))
        self.graph.add_edges_from((i, j) for i, j, _ in edges)

    def contains(self, g):
        return g in self.by_elem

    def mask_of(self, pred):
        m = 0
        for i, g in enumerate(self.elements):
            if pred(g):
                m |= 1 << i
        return m


def cayley_ball(spec, radius, cap=4096):
    if radius < 0:
        raise WallcubeError("radius must be >= 0")
    seen = {spec.identity()}
    frontier = [spec.identity()]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for s in spec.generators():
                h = spec.mul(g, s)
                if h not in seen:
                    if len(seen) >= cap:
                        raise StateSpaceCap(
                            f"cayley ball exceeds cap {cap}")
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    elements = sorted(seen, key=lambda g: (spec.length(g), spec.name(g)))
    return CayleyBall(spec, radius, elements)


# -- subgroups ---------------------------------------------------------


class CoordinateSubgroup:
    """<e_j : j in coords> inside FreeAbelian(d)."""

    def __init__(self, spec, coords):
        self.spec = spec
        self.coords = set(coords)

    def contains(self, g):
        return all(x == 0 for i, x in enumerate(g) if i not in self.coords)

    def describe(self):
        return f"coordinate subgroup {sorted(self.coords)}"


class CyclicSubgroup:
    """<w> inside a free group (w a reduced word)."""

    def __init__(self, spec, word):
        self.spec = spec
        self.word = word
        if not word:
            raise WallcubeError("w must be nontrivial")

    def contains(self, g):
        if g == self.spec.identity():
            return True
        for w in (self.word, self.spec.inv(self.word)):
            h = self.spec.identity()
            while self.spec.length(h) <= self.spec.length(g):
                h = self.spec.mul(h, w)
                if h == g:
                    return True
        return False

    def describe(self):
        return f"cyclic subgroup <{self.word}>"


class FreeFactorSubgroup:
    """One free factor of a FreeProduct."""

    def __init__(self, spec, factor):
        self.spec = spec
        self.factor = factor

    def contains(self, g):
        return len(g) == 0 or (len(g) == 1 and g[0][0] == self.factor)

    def describe(self):
        return f"free factor {self.factor}"


# -- H-walls -----------------------------------------------------------


class HWallSpec:
    """A subgroup plus an assignment rule deciding sides on the full group.

    Rules:
      "coordinate" (FreeAbelian, axis k): U = {x_k <= 0}, V = {x_k >= 0};
          carrier = the coordinate hyperplane x_k = 0.
      "branch" (Free(2), H = <letter>): after stripping the leading power of
          the axis letter, words whose next letter is the other generator go
          to U, its inverse to V; the axis itself is the carrier.
    """

    def __init__(self, subgroup, rule, axis=None, index=None):
        self.subgroup = subgroup
        self.rule = rule
        self.axis = axis
        self.index = index
        if rule not in ("coordinate", "branch"):
            raise UnknownGenerator(rule)

    def side(self, g):
        """'left', 'right', or 'both' for a full-group element."""
        if self.rule == "coordinate":
            x = g[self.axis]
            if x == 0:
                return "both"
            return "left" if x < 0 else "right"
        # branch rule on a free group
        spec = self.subgroup.spec
        axis = self.axis  # the subgroup's letter, e.g. "a"
        rest = g.lstrip(axis + axis.upper())
        if not rest:
            return "both"
        first = rest[0]
        return "left" if first.islower() else "right"

    def in_left(self, g):
        return self.side(g) in ("left", "both")

    def in_right(self, g):
        return self.side(g) in ("right", "both")


@dataclass
class HWallReport:
    ok: bool
    coverage_ok: bool
    invariance_violations: list
    carrier_orbits: int
    frontier_orbits: dict
    hdotdot_status: str
    caveat: str = TRUNCATION_CAVEAT

    def to_dict(self):
        return self.__dict__.copy()


def build_hwall(ball, hw):
    """The H-wall truncated to the ball, with a conformance report for the
    Def 2.8-style conditions, checked on the computable portion."""
    u = ball.mask_of(hw.in_left)
    v = ball.mask_of(hw.in_right)
    full = (1 << len(ball.elements)) - 1
    coverage_ok = (u | v) == full
    spec = ball.spec
    hmembers = [g for g in ball.elements
                if hw.subgroup.contains(g) and g != spec.identity()]
    violations = []
    for h in hmembers:
        for i, g in enumerate(ball.elements):
            hg = spec.mul(h, g)
            j = ball.by_elem.get(hg)
            if j is None:
                continue
            if bool(u >> i & 1) != bool(u >> j & 1) or \
                    bool(v >> i & 1) != bool(v >> j & 1):
                violations.append({"h": spec.name(h), "g": spec.name(g)})
    carrier = u & v
    carrier_orbits = _orbit_count(ball, hmembers, bits(carrier))
    frontier_orbits = {}
    for tag, side in (("U", u), ("V", v)):
        fr = ball.metric.frontier(side)
        frontier_orbits[tag] = _orbit_count(ball, hmembers, bits(fr))
    # side-swapping elements of H (the index-2 coset of the side stabilizer)
    swappers = [h for h in hmembers if _swaps_sides(ball, h, u, v)]
    if swappers:
        hdotdot = "violated" if violations else "verified (side-swappers present)"
    else:
        hdotdot = "vacuous at this radius (no side-swapping element in ball)"
    rep = HWallReport(
        ok=coverage_ok and not violations,
        coverage_ok=coverage_ok,
        invariance_violations=violations[:10],
        carrier_orbits=carrier_orbits,
        frontier_orbits=frontier_orbits,
        hdotdot_status=hdotdot,
    )
    return Wall(hw.index or 0, u, v), rep


def _swaps_sides(ball, h, u, v):
    spec = ball.spec
    for i in bits(u & ~v):
        hg = spec.mul(h, ball.elements[i])
        j = ball.by_elem.get(hg)
        if j is not None:
            return bool((v & ~u) >> j & 1)
    return False


def _orbit_count(ball, hmembers, indices):
    """Partial H-orbit count of the given ball-element indices."""
    if not indices:
        return 0
    spec = ball.spec
    g = nx.Graph()
    g.add_nodes_from(indices)
    iset = set(indices)
    for h in hmembers:
        for i in indices:
            hg = spec.mul(h, ball.elements[i])
            j = ball.by_elem.get(hg)
            if j in iset:
                g.add_edge(i, j)
    return nx.number_connected_components(g)


@dataclass
class HWallSystemMeta:
    wall_info: dict = field(default_factory=dict)  # index -> (spec pos, g name)
    pair_index: dict = field(default_factory=dict)  # (pair, spec pos) -> index
    specs: list = field(default_factory=list)
    dropped_vacuous: int = 0
    dropped_duplicate_partitions: int = 0
    reports: list = field(default_factory=list)


def generate_hwall_system(ball, hwall_specs, max_walls=256):
    """Wallspace on the ball with all ball-translates of the given H-walls.

    Translate walls {gU, gV} are truncated to the ball; duplicates are
    collapsed by (halfspace pair, source spec); vacuous truncations and
    truncation-created duplicate genuine partitions are dropped and counted.
    """
    spec = ball.spec
    meta = HWallSystemMeta(specs=list(hwall_specs))
    walls = []
    seen_pairs = set()
    partitions = {}
    full = (1 << len(ball.elements)) - 1
    next_index = 0
    for pos, hw in enumerate(hwall_specs):
        _w, rep = build_hwall(ball, hw)
        meta.reports.append(rep.to_dict())
        for g in ball.elements:
            ginv = spec.inv(g)
            gu = ball.mask_of(lambda x: hw.in_left(spec.mul(ginv, x)))
            gv = ball.mask_of(lambda x: hw.in_right(spec.mul(ginv, x)))
            pair = frozenset((gu, gv))
            if pair == frozenset((0, full)) or gu == 0 or gv == 0:
                meta.dropped_vacuous += 1
                continue
            if (pair, pos) in seen_pairs:
                continue  # equal walls per the (halfspaces, index) rule
            if gu & gv == 0:
                if pair in partitions:
                    meta.dropped_duplicate_partitions += 1
                    continue
                partitions[pair] = next_index
            seen_pairs.add((pair, pos))
            walls.append(Wall(next_index, gu, gv))
            meta.wall_info[next_index] = (pos, spec.name(g))
            meta.pair_index[(pair, pos)] = next_index
            next_index += 1
    ws = Wallspace(ball.names, walls, metric=ball.metric,
                   max_points=max(64, len(ball.names)),
                   max_walls=max(64, max_walls))
    return ws, meta


# -- codimension-1 analysis -------------------------------------------


def codim_one_analysis(ball, subgroup, d):
    """Components of ball minus N_d(H ∩ ball), with the radius-limited
    deep-component heuristic: a component is deep when it touches the
    boundary sphere of the ball."""
    hmask = ball.mask_of(subgroup.contains)
    removed = ball.metric.ball(hmask, d) if hmask else 0
    keep = [i for i in range(len(ball.elements)) if not (removed >> i) & 1]
    sub = ball.graph.subgraph(keep)
    comps = [sorted(c) for c in nx.connected_components(sub)]
    comps.sort()
    spec = ball.spec
    hmembers = [g for g in ball.elements
                if subgroup.contains(g) and g != spec.identity()]
    out = []
    deep_ids = []
    for ci, comp in enumerate(comps):
        deep = any(spec.length(ball.elements[i]) == ball.radius
                   for i in comp)
        frontier = sorted({i for i in comp
                           for j in ball.graph.neighbors(i)
                           if (removed >> j) & 1})
        out.append({"id": ci, "size": len(comp), "deep": deep,
                    "frontier_size": len(frontier),
                    "frontier_orbits": _orbit_count(ball, hmembers, frontier)})
        if deep:
            deep_ids.append(ci)
    # partial H-orbit classes of deep components
    g = nx.Graph()
    g.add_nodes_from(deep_ids)
    comp_of = {}
    for ci in deep_ids:
        for i in comps[ci]:
            comp_of[i] = ci
    for h in hmembers:
        for ci in deep_ids:
            for i in comps[ci]:
                hg = spec.mul(h, ball.elements[i])
                j = ball.by_elem.get(hg)
                if j in comp_of:
                    g.add_edge(ci, comp_of[j])
    classes = nx.number_connected_components(g) if deep_ids else 0
    return {"d": d, "n_components": len(comps),
            "n_deep": len(deep_ids), "deep_orbit_classes": classes,
            "components": out, "caveat": TRUNCATION_CAVEAT}


# -- actions -----------------------------------------------------------


class ActionMap:
    """Left multiplication by a group element, restricted to a ball; induces
    a partial permutation of points and (when a wall system's bookkeeping is
    supplied) of walls."""

    def __init__(self, point_map, wall_map, label="g", forced_bits=None):
        self.point_map = dict(point_map)    # point name -> point name
        self.wall_map = dict(wall_map)      # wall index -> (index, swap)
        # wall index -> side, for image walls whose preimage wall truncates
        # to vacuous (its orientation in the image is forced)
        self.forced_bits = dict(forced_bits or {})
        # wall index -> side a vertex must choose to have an image at all:
        # the other side of the wall maps outside the truncation
        self.domain_bits = {}
        self.label = label

    @classmethod
    def from_element(cls, ball, g, ws=None, meta=None):
        spec = ball.spec
        pm = {}
        for x in ball.elements:
            gx = spec.mul(g, x)
            if ball.contains(gx):
                pm[spec.name(x)] = spec.name(gx)
        wm = {}
        dom_bits = {}
        if ws is not None and meta is not None:
            for idx, (pos, tname) in meta.wall_info.items():
                t = ball.elements[ball.by_name[tname]]
                gt = spec.mul(g, t)
                gt_inv = spec.inv(gt)
                hw = meta.specs[pos]
                gu = ball.mask_of(lambda x: hw.in_left(spec.mul(gt_inv, x)))
                gv = ball.mask_of(lambda x: hw.in_right(spec.mul(gt_inv, x)))
                j = meta.pair_index.get((frozenset((gu, gv)), pos))
                if j is not None:
                    wm[idx] = (j, ws.wall(j).left != gu)
                elif gu == 0 and gv != 0:
                    dom_bits[idx] = 1
                elif gv == 0 and gu != 0:
                    dom_bits[idx] = 0
        forced = {}
        if ws is not None and meta is not None:
            targets = {j for j, _s in wm.values()}
            ginv = spec.inv(g)
            for idx, (pos, tname) in meta.wall_info.items():
                if idx in targets:
                    continue
                # preimage wall of idx under g; when it truncates to vacuous,
                # every ball vertex orients it to the full side, forcing the
                # image-side of wall idx
                t = ball.elements[ball.by_name[tname]]
                pre_t_inv = spec.inv(spec.mul(ginv, t))
                hw = meta.specs[pos]
                pu = ball.mask_of(lambda x: hw.in_left(spec.mul(pre_t_inv, x)))
                pv = ball.mask_of(lambda x: hw.in_right(spec.mul(pre_t_inv, x)))
                if pu == 0 and pv != 0:
                    forced[idx] = 1
                elif pv == 0 and pu != 0:
                    forced[idx] = 0
        out = cls(pm, wm, label=spec.name(g), forced_bits=forced)
        out.domain_bits = dom_bits
        return out

    def check(self, ws):
        """Raise NotAnAutomorphism on any inconsistency on the domain."""
        vals = list(self.point_map.values())
        if len(set(vals)) != len(vals):
            raise NotAnAutomorphism("point map not injective")
        if ws.metric is not None:
            keys = list(self.point_map)
            for a in range(len(keys)):
                for b in range(a + 1, len(keys)):
                    x, y = keys[a], keys[b]
                    dxy = ws.metric.d(ws.point_index[x], ws.point_index[y])
                    dgxy = ws.metric.d(ws.point_index[self.point_map[x]],
                                       ws.point_index[self.point_map[y]])
                    if dxy != dgxy:
                        raise NotAnAutomorphism(
                            {"pair": [x, y], "d": dxy, "d_image": dgxy})
        for i, (j, swap) in self.wall_map.items():
            wi, wj = ws.wall(i), ws.wall(j)
            tgt_l, tgt_r = (wj.right, wj.left) if swap else (wj.left, wj.right)
            for x, gx in self.point_map.items():
                bx, bgx = ws.point_bit(x), ws.point_bit(gx)
                if bool(wi.left & bx) != bool(tgt_l & bgx) or \
                        bool(wi.right & bx) != bool(tgt_r & bgx):
                    raise NotAnAutomorphism(
                        {"wall": i, "image": j, "point": x})

    def point_mask_power(self, ws, n):
        """Returns a function applying the n-th power of the point map to a
        bitmask (dropping points that leave the domain)."""
        fwd = {ws.point_index[a]: ws.point_index[b]
               for a, b in self.point_map.items()}
        if n < 0:
            fwd = {b: a for a, b in fwd.items()}
            n = -n

        def apply(mask):
            for _ in range(n):
                out = 0
                for b in bits(mask):
                    if b in fwd:
                        out |= 1 << fwd[b]
                mask = out
            return mask

        return apply

    def wall_power(self, i, n):
        """n-th power of the wall map at wall i; None when undefined."""
        fwd = self.wall_map
        if n < 0:
            fwd = {}
            for a, (b, swap) in self.wall_map.items():
                fwd[b] = (a, swap)
            n = -n
        j, flip = i, False
        for _ in range(n):
            if j not in fwd:
                return None
            j, s = fwd[j]
            flip ^= s
        return j, flip

    def fixes_vertex(self, ws, m):
        """gc = c on every mapped wall."""
        if not self.wall_map:
            return False
        for i, (j, swap) in self.wall_map.items():
            si = (m >> ws.wall_pos[i]) & 1
            sj = (m >> ws.wall_pos[j]) & 1
            if sj != (si ^ (1 if swap else 0)):
                return False
        return True


@dataclass
class EquivarianceReport:
    ok: bool
    domain_vertices: int
    preserved_edges: int
    violations: list = field(default_factory=list)

    def to_dict(self):
        return self.__dict__.copy()


def verify_equivariance(ws, action, cc):
    """Check the action is a partial automorphism of the wallspace and that
    its vertex map is a complex isomorphism on the subcomplex where total."""
    action.check(ws)
    # separation counts invariant on the point domain
    violations = []
    keys = sorted(action.point_map)
    from .wallspace import separation_count  # local to avoid cycle at import
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            x, y = keys[a], keys[b]
            sx = _mapped_separation(ws, action, x, y)
            if sx is not None and sx[0] != sx[1]:
                violations.append({"kind": "SeparationCount",
                                   "pair": [x, y], "counts": sx})
    phi = _vertex_map(ws, action)
    vset = set(cc.vertices)
    dom_req = {ws.wall_pos[i]: s for i, s in action.domain_bits.items()}
    domain = {}
    for m in cc.vertices:
        if any((m >> pos) & 1 != s for pos, s in dom_req.items()):
            continue  # image falls outside the truncated system
        img = phi(m)
        if img in vset:
            domain[m] = img
    imgs = list(domain.values())
    if len(set(imgs)) != len(imgs):
        violations.append({"kind": "NotInjective"})
    preserved = 0
    wall_img = {ws.wall_pos[i]: ws.wall_pos[j]
                for i, (j, _s) in action.wall_map.items()}
    for u, v, w in cc.edges:
        if u in domain and v in domain and w in wall_img:
            d = domain[u] ^ domain[v]
            if d == 1 << wall_img[w]:
                preserved += 1
            else:
                violations.append({"kind": "EdgeNotPreserved",
                                   "edge": [cc.vid[u], cc.vid[v]]})
    return EquivarianceReport(ok=not violations,
                              domain_vertices=len(domain),
                              preserved_edges=preserved,
                              violations=violations[:10])


def _mapped_separation(ws, action, x, y):
    gx, gy = action.point_map[x], action.point_map[y]
    bx, by = ws.point_bit(x), ws.point_bit(y)
    bgx, bgy = ws.point_bit(gx), ws.point_bit(gy)
    cnt = img_cnt = 0
    for i, (j, _s) in action.wall_map.items():
        wi, wj = ws.wall(i), ws.wall(j)
        if _open_separates(wi, bx, by):
            cnt += 1
        if _open_separates(wj, bgx, bgy):
            img_cnt += 1
    return (cnt, img_cnt)


def _open_separates(w, bx, by):
    ol, orr = w.open_left(), w.open_right()
    return bool((ol & bx and orr & by) or (ol & by and orr & bx))


def _vertex_map(ws, action):
    wall_img = {ws.wall_pos[i]: (ws.wall_pos[j], s)
                for i, (j, s) in action.wall_map.items()}
    mapped_targets = {j for j, _s in wall_img.values()}
    forced = {ws.wall_pos[i]: s for i, s in action.forced_bits.items()}

    def phi(m):
        out = 0
        for pos in range(ws.nwalls()):
            if pos in wall_img:
                j, s = wall_img[pos]
                bit = ((m >> pos) & 1) ^ (1 if s else 0)
                if bit:
                    out |= 1 << j
        for pos in range(ws.nwalls()):
            if pos in mapped_targets:
                continue
            if pos in forced:
                if forced[pos]:
                    out |= 1 << pos
            elif (m >> pos) & 1:
                # no image information: keep the orientation unchanged
                out |= 1 << pos
        return out

    return phi


# -- relative cocompactness -------------------------------------------


@dataclass
class DecompositionReport:
    m: int
    least_m: int
    k_part: int
    unique: int
    coverage_violations: list
    isolation_violations: list
    intersection_ok: bool
    intersection_witnesses: list
    caveat: str = TRUNCATION_CAVEAT

    def to_dict(self):
        return self.__dict__.copy()


def rel_cocompact_check(ws, cc, peripheries, variant, m=None):
    """Depth-partition of all cubes against peripheral hemiwallspaces.

    Depth of a cube = min distance to a canonical cube of a ground point.
    Cubes of depth >= m must be represented in exactly one periphery;
    peripheral subcomplexes must pairwise intersect inside the depth-< m
    part.
    """
    from .complex import canonical_cube
    from .hemi import dual_sub, induce_hemi, represented_in

    seeds = set()
    for p in ws.points:
        seeds.update(canonical_cube(ws, p).corners())
    vdepth = cc.bfs_distances(sorted(seeds))
    hemis = [induce_hemi(ws, P, variant) for P in peripheries]
    cubes = cc.all_cubes()
    info = []
    for c in cubes:
        depth = min(vdepth[mm] for mm in c.corners())
        reps = [k for k, h in enumerate(hemis) if represented_in(c, h)]
        info.append((c, depth, reps))
    uncovered = [depth for _c, depth, reps in info if not reps]
    least_m = (max(uncovered) + 1) if uncovered else 0
    if m is None:
        m = least_m
    k_part = sum(1 for _c, depth, _r in info if depth < m)
    unique = sum(1 for _c, depth, reps in info
                 if depth >= m and len(reps) == 1)
    coverage = [{"dim": c.dim, "depth": depth}
                for c, depth, reps in info if depth >= m and not reps]
    isolation = [{"dim": c.dim, "depth": depth, "peripheries": reps}
                 for c, depth, reps in info if depth >= m and len(reps) > 1]
    inter_wit = []
    subs = []
    for h in hemis:
        try:
            subs.append(set(dual_sub(cc, h).vertices))
        except Exception:
            subs.append(set())
    for a in range(len(subs)):
        for b in range(a + 1, len(subs)):
            for v in subs[a] & subs[b]:
                if vdepth[v] >= m:
                    inter_wit.append({"peripheries": [a, b],
                                      "vertex": cc.vid[v],
                                      "depth": vdepth[v]})
    return DecompositionReport(
        m=m, least_m=least_m, k_part=k_part, unique=unique,
        coverage_violations=coverage, isolation_violations=isolation,
        intersection_ok=not inter_wit,
        intersection_witnesses=inter_wit[:20])
