"""Hypotenuse graph of a right-angle trapezoid tiling and its parity certificates.

Each tile contributes the directed edge from the image of its alpha vertex
``a`` to the image of its beta vertex ``b``.  Out-degree at a vertex counts
the alpha angles there and in-degree counts the beta angles, so balance is
decided by the angle pattern.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .exactnum import AngleMode
from .geometry import (
    TRAPEZOID,
    GeometryError,
    Point,
    direction_equiv,
    rotate,
    rotation_order,
    trig_of_alpha,
)
from .incidence import VertexIncidence, build_incidence
from .tiling import Tiling, require_valid

__all__ = [
    "WrongPrototileError",
    "NotEulerianError",
    "HEdge",
    "HypotenuseGraph",
    "PairedGraph",
    "FeasibleCycle",
    "ParityCertificate",
    "PatternVerdict",
    "build_hgraph",
    "angle_pattern_check",
    "degree_balance",
    "pair_merge",
    "peel_cycles",
    "decompose_feasible_cycles",
    "orientation_propagation_check",
    "parity_certificate",
    "direction_certificate",
    "parity_theorem_check",
    "undirected_cycles",
    "undirected_cycle_certificates",
    "undirected_cycle_parity",
    "eighth_direction_triples",
    "hgraph_report",
    "pairing_conjecture_check",
    "hypotenuse_paired",
    "components",
]


class WrongPrototileError(GeometryError):
    pass


class NotEulerianError(ValueError):
    pass


@dataclass(frozen=True)
class HEdge:
    origin: Point
    terminus: Point
    tile: int

    @property
    def vector(self) -> Point:
        return self.terminus - self.origin


@dataclass
class HypotenuseGraph:
    vertices: list[Point]
    edges: list[HEdge]
    out_edges: dict = field(default_factory=dict)
    in_edges: dict = field(default_factory=dict)

    @classmethod
    def from_edges(cls, edges: list[HEdge]) -> HypotenuseGraph:
        out, inc = defaultdict(list), defaultdict(list)
        for e in edges:
            out[e.origin].append(e)
            inc[e.terminus].append(e)
        verts = sorted(set(out) | set(inc), key=Point.lex_yx)
        return cls(verts, list(edges), {v: out[v] for v in verts}, {v: inc[v] for v in verts})

    def degree(self, v: Point) -> tuple[int, int]:
        return len(self.out_edges.get(v, ())), len(self.in_edges.get(v, ()))


def _require_trapezoid(t: Tiling) -> None:
    if t.prototile.kind != TRAPEZOID:
        raise WrongPrototileError("wrong prototile: the hypotenuse graph needs a right-angle trapezoid")


def build_hgraph(t: Tiling, check: bool = True) -> HypotenuseGraph:
    _require_trapezoid(t)
    if check:
        require_valid(t)
    edges = [HEdge(t.labeled_point(j, "a"), t.labeled_point(j, "b"), j) for j in range(t.n)]
    return HypotenuseGraph.from_edges(edges)


def components(g: HypotenuseGraph) -> list[list[HEdge]]:
    """Edge sets of the weakly connected components, ordered by least tile id."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        parent[find(e.origin)] = find(e.terminus)
    groups = defaultdict(list)
    for e in g.edges:
        groups[find(e.origin)].append(e)
    return sorted(groups.values(), key=lambda es: min(e.tile for e in es))


# ---------------------------------------------------------------------------
# angle patterns

_A, _B, _R = "alpha", "beta", "pi/2"
_ALLOWED = ((_A, _B), (_A, _B, _A, _B), (_A, _A, _B, _B), (_A, _B, _R, _R), (_A, _R, _B, _R))


def _rotations(p: tuple) -> set[tuple]:
    return {p[i:] + p[:i] for i in range(len(p))}


_ALLOWED_FORMS = set()
for _p in _ALLOWED:
    _ALLOWED_FORMS |= _rotations(_p) | _rotations(tuple(reversed(_p)))


def pattern_allowed(pattern: tuple[str, ...]) -> bool:
    """Membership in the hypotenuse-vertex pattern list, up to rotation and mirror image."""
    return tuple(pattern) in _ALLOWED_FORMS


@dataclass(frozen=True)
class PatternVerdict:
    eulerian: bool
    offenders: tuple[tuple[Point, tuple[str, ...]], ...]
    boundary: tuple[Point, ...]  # hypotenuse vertices on the region boundary (pattern check extended there)


def _incidence_at(t: Tiling, inc: list[VertexIncidence] | None) -> dict[Point, VertexIncidence]:
    if inc is None:
        inc = build_incidence(t)
    return {v.w: v for v in inc}


def angle_pattern_check(
    t: Tiling, g: HypotenuseGraph, inc: list[VertexIncidence] | None = None
) -> PatternVerdict:
    at = _incidence_at(t, inc)
    offenders, boundary = [], []
    for u in g.vertices:
        v = at[u]
        if v.position != "interior":
            boundary.append(u)
        if not pattern_allowed(v.pattern):
            offenders.append((u, v.pattern))
    return PatternVerdict(not offenders, tuple(offenders), tuple(boundary))


@dataclass(frozen=True)
class DegreeTable:
    balanced: bool
    table: tuple[tuple[Point, int, int], ...]  # (vertex, out-degree, in-degree)


def degree_balance(g: HypotenuseGraph) -> DegreeTable:
    rows = tuple((v, *g.degree(v)) for v in g.vertices)
    return DegreeTable(all(o == i for _, o, i in rows), rows)


# ---------------------------------------------------------------------------
# pairing at (alpha, alpha, beta, beta) vertices


@dataclass
class PairedGraph:
    baseline: HypotenuseGraph
    V1: list[Point]
    chains: list[tuple[HEdge, ...]]  # composite edges of the merged graph, in walk order
    closed: list[tuple[HEdge, ...]]  # chains that close up through V1 vertices only
    Vstar: list[Point]

    def degree(self, v: Point) -> tuple[int, int]:
        out = sum(1 for c in self.chains if c[0].origin == v)
        inn = sum(1 for c in self.chains if c[-1].terminus == v)
        return out, inn


def pair_merge(g: HypotenuseGraph, inc: list[VertexIncidence]) -> PairedGraph:
    """Glue the four hypotenuses at every (alpha, alpha, beta, beta) vertex into two paths.

    Around such a vertex each alpha tile sits next to exactly one beta tile;
    the two angles make a straight angle, and that beta tile's incoming
    hypotenuse continues into the alpha tile's outgoing one.
    """
    at = {v.w: v for v in inc}
    by_tile = {e.tile: e for e in g.edges}
    succ: dict[int, int] = {}
    V1 = []
    for u in g.vertices:
        v = at[u]
        if v.pattern not in _rotations((_A, _A, _B, _B)):
            continue
        V1.append(u)
        k = len(v.tiles)
        for i in range(k):
            if v.pattern[i] != _A:
                continue
            # the beta neighbour of this alpha, on the side away from the other alpha
            for j in ((i - 1) % k, (i + 1) % k):
                if v.pattern[j] == _B:
                    break
            else:
                raise AssertionError(f"no beta neighbour at {u}")
            beta_tile, alpha_tile = v.tiles[j], v.tiles[i]
            ein, eout = by_tile[beta_tile], by_tile[alpha_tile]
            if ein.terminus != u or eout.origin != u:
                raise AssertionError(f"pattern at {u} inconsistent with hypotenuse endpoints")
            if beta_tile in succ:
                raise AssertionError(f"beta tile {beta_tile} paired twice at {u}")
            succ[beta_tile] = alpha_tile
    pred = {b: a for a, b in succ.items()}
    chains, closed, seen = [], [], set()
    for e in g.edges:
        if e.tile in seen or e.tile in pred:
            continue
        chain = [e]
        seen.add(e.tile)
        while chain[-1].tile in succ:
            nxt = succ[chain[-1].tile]
            chain.append(by_tile[nxt])
            seen.add(nxt)
        chains.append(tuple(chain))
    for e in g.edges:
        if e.tile in seen:
            continue
        chain = [e]
        seen.add(e.tile)
        while succ[chain[-1].tile] != e.tile:
            nxt = succ[chain[-1].tile]
            chain.append(by_tile[nxt])
            seen.add(nxt)
        closed.append(tuple(chain))
    v1 = set(V1)
    return PairedGraph(g, V1, chains, closed, [v for v in g.vertices if v not in v1])


def peel_cycles(arcs: list[tuple[object, object]]) -> list[list[int]] | None:
    """Split a directed multigraph into edge-disjoint cycles by peeling loops.

    ``arcs`` are (origin, terminus) pairs.  Returns cycles as lists of arc
    indices, or None when some walk gets stuck, i.e. the graph is not a union
    of cycles.  Arcs are taken in index order, so the output is deterministic.
    """
    out = defaultdict(list)
    for i, (o, _) in enumerate(arcs):
        out[o].append(i)
    ptr = defaultdict(int)
    used = [False] * len(arcs)

    def next_arc(v):
        lst = out[v]
        while ptr[v] < len(lst) and used[lst[ptr[v]]]:
            ptr[v] += 1
        return lst[ptr[v]] if ptr[v] < len(lst) else None

    cycles = []
    for start in range(len(arcs)):
        if used[start]:
            continue
        path = [start]
        used[start] = True
        verts = [arcs[start][0]]  # verts[i] is the origin of path[i]
        cur = arcs[start][1]
        while path:
            if cur in verts:
                i = verts.index(cur)
                cycles.append(path[i:])
                del path[i:]
                del verts[i:]
                if not path:
                    break
            a = next_arc(cur)
            if a is None:
                return None
            used[a] = True
            path.append(a)
            verts.append(cur)
            cur = arcs[a][1]
    return cycles


@dataclass(frozen=True)
class FeasibleCycle:
    edges: tuple[HEdge, ...]
    tiles: tuple[int, ...]
    vectors: tuple[Point, ...]  # gamma_i: a -> b of tile K_i
    companions: tuple[Point, ...]  # rho_i: d -> a of tile K_i
    positive: tuple[bool, ...]  # orientation of K_i

    def __len__(self) -> int:
        return len(self.edges)


def tile_positive(t: Tiling, j: int) -> bool:
    """a, b, c, d run clockwise: the tile is a rotated (not mirrored) copy."""
    return not t.tiles[j].iso.reflect


def _cycle(t: Tiling, edges: list[HEdge]) -> FeasibleCycle:
    tiles = tuple(e.tile for e in edges)
    return FeasibleCycle(
        tuple(edges),
        tiles,
        tuple(e.vector for e in edges),
        tuple(t.labeled_point(j, "a") - t.labeled_point(j, "d") for j in tiles),
        tuple(tile_positive(t, j) for j in tiles),
    )


def decompose_feasible_cycles(pg: PairedGraph, t: Tiling) -> list[FeasibleCycle]:
    arcs = [(c[0].origin, c[-1].terminus) for c in pg.chains]
    loops = peel_cycles(arcs)
    if loops is None:
        raise NotEulerianError("hypotenuse graph is not component-wise Eulerian")
    out = [_cycle(t, list(c)) for c in pg.closed]
    for loop in loops:
        out.append(_cycle(t, [e for i in loop for e in pg.chains[i]]))
    return out


def orientation_propagation_check(c: FeasibleCycle) -> bool:
    m = len(c)
    for i in range(m):
        j = (i + 1) % m
        if c.positive[i] != c.positive[j]:
            ok = direction_equiv(c.vectors[i], c.companions[j]) and direction_equiv(c.companions[i], c.vectors[j])
        else:
            ok = direction_equiv(c.vectors[i], c.vectors[j]) and direction_equiv(c.companions[i], c.companions[j])
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# parity certificate


@dataclass(frozen=True)
class ParityCertificate:
    a: int
    b: int
    c: int
    d: int
    closure: bool
    norm_equality: bool
    length: int
    conjugate_frame: bool = False  # classes taken against conj(omega)

    @property
    def even(self) -> bool:
        return self.length % 2 == 0

    @property
    def holds(self) -> bool:
        return self.closure and self.norm_equality and self.even

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "closure": self.closure,
            "normEquality": self.norm_equality,
            "length": self.length,
            "even": self.even,
            "holds": self.holds,
            "conjugateFrame": self.conjugate_frame,
        }


class DirectionClassError(ValueError):
    pass


def direction_certificate(vectors, cos_w, sin_w, scale=2, conjugate_frame=False) -> ParityCertificate:
    """Net counts over the eight classes {+-1, +-i, +-w, +-iw}, w = cos_w + i sin_w.

    Every vector must equal ``scale`` times one class representative.
    """
    one = cos_w * 0 + 1
    zero = one * 0
    units = [
        ((one, zero), 0, 1),
        ((zero, one), 1, 1),
        ((cos_w, sin_w), 2, 1),
        ((-sin_w, cos_w), 3, 1),
    ]
    net = [0, 0, 0, 0]
    for v in vectors:
        for (ux, uy), slot, _ in units:
            if v[0] == ux * scale and v[1] == uy * scale:
                net[slot] += 1
                break
            if v[0] == -ux * scale and v[1] == -uy * scale:
                net[slot] -= 1
                break
        else:
            raise DirectionClassError(f"direction {v} outside the eight classes")
    a, b, c, d = net
    real = cos_w * c - sin_w * d + a
    imag = sin_w * c + cos_w * d + b
    return ParityCertificate(
        a, b, c, d, real.sign() == 0 and imag.sign() == 0, a * a + b * b == c * c + d * d, len(vectors), conjugate_frame
    )


def parity_certificate(c: FeasibleCycle, mode: AngleMode) -> ParityCertificate:
    """Certificate for one feasible cycle.

    The cycle is re-rooted at a positively oriented tile when one exists and
    the frame is turned so that the first hypotenuse points along -x.
    """
    if mode.is_generic:
        raise ValueError("the parity frame needs a bound alpha")
    vecs = list(c.vectors)
    start = next((i for i, p in enumerate(c.positive) if p), 0)
    vecs = vecs[start:] + vecs[:start]
    d = vecs[0][0].d
    n = rotation_order(d)
    target = Point(vecs[0][0] * 0 - 2, vecs[0][0] * 0)
    k = next((k for k in range(n) if rotate(vecs[0], k, d) == target), None)
    if k is None:
        raise DirectionClassError("first hypotenuse cannot be turned onto -x within the group")
    vecs = [rotate(v, k, d) for v in vecs]
    cos_a, sin_a, _ = trig_of_alpha(mode, d)
    try:
        return direction_certificate(vecs, cos_a, sin_a)
    except DirectionClassError:
        return direction_certificate(vecs, cos_a, -sin_a, conjugate_frame=True)


@dataclass(frozen=True)
class ParityReport:
    n_even: bool
    eulerian: bool
    cycles: tuple[FeasibleCycle, ...]
    certificates: tuple[ParityCertificate, ...]
    orientation_ok: bool
    pattern: PatternVerdict

    def to_json(self) -> dict:
        return {
            "nEven": self.n_even,
            "eulerian": self.eulerian,
            "orientationPropagation": self.orientation_ok,
            "cycles": [{"length": len(c), "tiles": list(c.tiles), "certificate": cert.to_json()}
                       for c, cert in zip(self.cycles, self.certificates)],
        }


def parity_theorem_check(t: Tiling, threads: int = 1) -> ParityReport:
    g = build_hgraph(t)
    inc = build_incidence(t)
    verdict = angle_pattern_check(t, g, inc)
    if not verdict.eulerian:
        raise NotEulerianError(f"not component-wise Eulerian at {len(verdict.offenders)} vertices")
    pg = pair_merge(g, inc)
    cycles = decompose_feasible_cycles(pg, t)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            certs = list(ex.map(lambda c: parity_certificate(c, t.angle_mode), cycles))
    else:
        certs = [parity_certificate(c, t.angle_mode) for c in cycles]
    assert sum(len(c) for c in cycles) == t.n
    return ParityReport(
        all(c.even for c in certs),
        True,
        tuple(cycles),
        tuple(certs),
        all(orientation_propagation_check(c) for c in cycles),
        verdict,
    )


# ---------------------------------------------------------------------------
# the undirected graph for alpha = pi/4


def undirected_cycles(g: HypotenuseGraph) -> list[list[Point]] | None:
    """Edge-disjoint cycles covering the undirected hypotenuse graph.

    Each cycle is returned as its list of edge vectors in one traversal
    direction.  None if some vertex has odd degree.
    """
    adj = defaultdict(list)
    for i, e in enumerate(g.edges):
        adj[e.origin].append(i)
        adj[e.terminus].append(i)
    if any(len(v) % 2 for v in adj.values()):
        return None
    used = [False] * len(g.edges)
    cycles = []
    for start in range(len(g.edges)):
        if used[start]:
            continue
        e0 = g.edges[start]
        used[start] = True
        verts = [e0.origin]
        vecs = [e0.vector]
        cur = e0.terminus
        while True:
            if cur in verts:
                i = verts.index(cur)
                cycles.append(vecs[i:])
                del verts[i:]
                del vecs[i:]
                if not verts:
                    break
            nxt = next(i for i in adj[cur] if not used[i])
            used[nxt] = True
            e = g.edges[nxt]
            verts.append(cur)
            if e.origin == cur:
                vecs.append(e.vector)
                cur = e.terminus
            else:
                vecs.append(Point(-e.vector[0], -e.vector[1]))
                cur = e.origin
    return cycles


def undirected_cycle_certificates(t: Tiling) -> list[ParityCertificate]:
    if t.angle_mode != AngleMode.bound(1, 4):
        raise ValueError("wrong alpha: the undirected argument is for alpha = pi/4")
    g = build_hgraph(t)
    cycles = undirected_cycles(g)
    if cycles is None:
        raise NotEulerianError("odd degree in the undirected hypotenuse graph")
    cos_a, sin_a, _ = trig_of_alpha(t.angle_mode, t.d)
    return [direction_certificate(c, cos_a, sin_a) for c in cycles]


def undirected_cycle_parity(t: Tiling) -> bool:
    return all(c.holds for c in undirected_cycle_certificates(t))


def eighth_direction_triples() -> list[tuple[int, int, int]]:
    """Triples (k1, k2, k3) with e^{i k pi/4} summing to zero; there are none."""
    import cmath

    found = []
    for ks in product(range(8), repeat=3):
        z = sum(cmath.exp(1j * cmath.pi * k / 4) for k in ks)
        if abs(z) < 1e-9:
            found.append(ks)
    return found


def pairing_conjecture_check(t: Tiling, g: HypotenuseGraph | None = None) -> bool:
    """Every component is two coincident hypotenuses with opposite directions."""
    if g is None:
        g = build_hgraph(t)
    for comp in components(g):
        if len(comp) != 2:
            return False
        e, f = comp
        if not (e.origin == f.terminus and e.terminus == f.origin):
            return False
    return True


def hgraph_report(t: Tiling, threads: int = 1) -> dict:
    """Everything the command line prints for one trapezoid tiling."""
    g = build_hgraph(t)
    inc = build_incidence(t)
    verdict = angle_pattern_check(t, g, inc)
    out = {
        "eulerian": verdict.eulerian,
        "balanced": degree_balance(g).balanced,
        "offenders": [{"vertex": p.to_json(), "pattern": list(pat)} for p, pat in verdict.offenders],
        "boundaryVertices": len(verdict.boundary),
        "components": len(components(g)),
        "pairingConjecture": pairing_conjecture_check(t, g),
        "hypotenusePaired": hypotenuse_paired(t, g),
        "cycles": [],
    }
    if verdict.eulerian and not t.angle_mode.is_generic:
        rep = parity_theorem_check(t, threads)
        out["cycles"] = rep.to_json()["cycles"]
        out["nEven"] = rep.n_even
        out["orientationPropagation"] = rep.orientation_ok
    return out


def hypotenuse_paired(t: Tiling, g: HypotenuseGraph | None = None) -> bool:
    """Each hypotenuse coincides with another tile's hypotenuse run backwards."""
    if g is None:
        g = build_hgraph(t)
    ends = Counter((e.origin, e.terminus) for e in g.edges)
    return all(ends[(e.terminus, e.origin)] == ends[(e.origin, e.terminus)] for e in g.edges)
