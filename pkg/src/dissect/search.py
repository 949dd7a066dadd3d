"""Exhaustive enumeration of tilings of a rectangle by copies of one prototile.

Depth-first exact cover.  The uncovered part of the region is kept as a list
of convex pieces.  At each node take the least uncovered point p (least y,
then least x) and the first boundary ray e of the uncovered wedge at p,
counterclockwise from +x.  In any completion exactly one tile covers the
points just counterclockwise of e near p; p is its least point, hence a
vertex, and the edge leaving p counterclockwise runs along e.  Branching over
those placements finds every tiling exactly once.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .exactnum import QuadraticNumber, qn_sqrt
from .geometry import (
    Isometry,
    Point,
    Prototile,
    ccw_key,
    convex_difference,
    convex_intersection_area,
    placed_polygon,
)
from .tiling import Region, Tiling

log = logging.getLogger(__name__)

__all__ = ["SearchConfig", "SearchResult", "enumerate_tilings", "canonical_form", "orbit_size", "square_for", "sweep"]


@dataclass(frozen=True)
class SearchConfig:
    prototile: Prototile
    region: Region
    target_n: int
    rotations: tuple[int, ...] | None = None  # defaults to the prototile's allowed rotations
    reflections: bool = True
    dedup_symmetry: bool = True
    node_limit: int = 10**7

    def __post_init__(self) -> None:
        if self.prototile.area() * self.target_n != self.region.area():
            raise ValueError("area mismatch: target_n copies do not have the region's area")


@dataclass
class SearchResult:
    tilings: list[Tiling]
    nodes_explored: int
    exhausted: bool
    raw_count: int = 0  # solutions before symmetry reduction
    orbit_sizes: list[int] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "tilings": len(self.tilings),
            "rawCount": self.raw_count,
            "orbitSizes": self.orbit_sizes,
            "nodesExplored": self.nodes_explored,
            "exhausted": self.exhausted,
        }


def _dir_key(v: Point) -> Point:
    """Direction of v, scaled so that its larger-index nonzero coordinate has absolute value 1."""
    c = v[0] if v[0].sign() != 0 else v[1]
    s = c if c.sign() > 0 else -c
    return Point(v[0] / s, v[1] / s)


@dataclass(frozen=True)
class _Shape:
    iso: Isometry  # linear part only
    poly: tuple[Point, ...]
    starts: dict  # direction key -> list of vertex indices whose outgoing edge has that direction


def _shapes(cfg: SearchConfig) -> list[_Shape]:
    proto = cfg.prototile
    d = proto.d
    zero = QuadraticNumber(0, 0, d)
    rots = cfg.rotations if cfg.rotations is not None else proto.allowed_rotations
    seen, out = set(), []
    for rot in sorted(rots):
        for reflect in (False, True) if cfg.reflections else (False,):
            iso = Isometry(rot, reflect, zero, zero)
            poly = placed_polygon(proto, iso)
            lo = min(poly, key=Point.lex_yx)
            key = frozenset((p - lo).key() for p in poly)
            if key in seen:
                continue
            seen.add(key)
            starts: dict = {}
            n = len(poly)
            for i in range(n):
                starts.setdefault(_dir_key(poly[(i + 1) % n] - poly[i]), []).append(i)
            out.append(_Shape(iso, poly, starts))
    return out


def _bbox(poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def _anchor(pieces: list[list[Point]]) -> tuple[Point, Point]:
    p = min((v for piece in pieces for v in piece), key=Point.lex_yx)
    best = None
    for piece in pieces:
        n = len(piece)
        for i, v in enumerate(piece):
            if v == p:
                e = piece[(i + 1) % n] - v
                if best is None or ccw_key(e) < ccw_key(best):
                    best = e
    return p, best


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, cfg: SearchConfig, shapes: list[_Shape]) -> None:
        self.cfg = cfg
        self.shapes = shapes
        self.nodes = 0
        self.solutions: list[list[Isometry]] = []
        self.tile_area = cfg.prototile.area()

    def placements(self, pieces):
        p, e = _anchor(pieces)
        key = _dir_key(e)
        for shape in self.shapes:
            for i in shape.starts.get(key, ()):
                t = p - shape.poly[i]
                poly = tuple(q + t for q in shape.poly)
                if self.fits(pieces, poly):
                    yield Isometry(shape.iso.rot, shape.iso.reflect, t[0], t[1]), poly

    def fits(self, pieces, poly) -> bool:
        bx0, by0, bx1, by1 = _bbox(poly)
        total = self.tile_area * 0
        for piece in pieces:
            px0, py0, px1, py1 = _bbox(piece)
            if px1 <= bx0 or bx1 <= px0 or py1 <= by0 or by1 <= py0:
                continue
            total = total + convex_intersection_area(piece, poly)
        return total == self.tile_area

    @staticmethod
    def cut(pieces, poly):
        bx0, by0, bx1, by1 = _bbox(poly)
        out = []
        for piece in pieces:
            px0, py0, px1, py1 = _bbox(piece)
            if px1 <= bx0 or bx1 <= px0 or py1 <= by0 or by1 <= py0:
                out.append(piece)
            elif convex_intersection_area(piece, poly).sign() == 0:
                out.append(piece)
            else:
                out.extend(convex_difference(piece, poly))
        return out

    def run(self, pieces, placed) -> None:
        if not pieces:
            if len(placed) == self.cfg.target_n:
                self.solutions.append(list(placed))
            return
        if len(placed) >= self.cfg.target_n:
            return
        for iso, poly in self.placements(pieces):
            self.nodes += 1
            if self.nodes > self.cfg.node_limit:
                raise _Budget
            placed.append(iso)
            self.run(self.cut(pieces, poly), placed)
            placed.pop()


def _initial(cfg: SearchConfig):
    return [list(cfg.region.polygon())]


def _run_branch(args):
    cfg, shapes, iso, poly = args
    s = _Searcher(cfg, shapes)
    exhausted = True
    try:
        s.run(s.cut(_initial(cfg), poly), [iso])
    except _Budget:
        exhausted = False
    return s.solutions, s.nodes, exhausted


def enumerate_tilings(cfg: SearchConfig, threads: int = 1) -> SearchResult:
    shapes = _shapes(cfg)
    root = _Searcher(cfg, shapes)
    branches = list(root.placements(_initial(cfg)))
    nodes = len(branches)
    sols: list[list[Isometry]] = []
    exhausted = True
    if nodes > cfg.node_limit:
        return SearchResult([], nodes, False)
    jobs = [(cfg, shapes, iso, poly) for iso, poly in branches]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_run_branch, jobs))
    else:
        results = []
        for job in jobs:
            results.append(_run_branch(job))
            if not results[-1][2]:
                break
    for found, n, ok in results:
        sols += found
        nodes += n
        exhausted = exhausted and ok
    if nodes > cfg.node_limit:
        exhausted = False
    tilings = [Tiling.from_isometries(cfg.prototile, cfg.region, isos) for isos in sols]
    raw = len(tilings)
    orbit_sizes = []
    if cfg.dedup_symmetry:
        kept, seen = [], set()
        for t in tilings:
            key = canonical_form(t)
            if key not in seen:
                seen.add(key)
                kept.append(t)
                orbit_sizes.append(orbit_size(t))
        tilings = kept
    log.info("search: %d tilings (%d raw), %d nodes, exhausted=%s", len(tilings), raw, nodes, exhausted)
    return SearchResult(tilings, nodes, exhausted, raw, orbit_sizes)


# ---------------------------------------------------------------------------
# symmetry classes


def _tiling_key(polys) -> tuple:
    return tuple(sorted(tuple(sorted(p.key() for p in poly)) for poly in polys))


def _images(t: Tiling) -> list[tuple]:
    from .families import square_symmetries

    out = []
    for sym in square_symmetries(t.region):
        out.append(_tiling_key([[sym(p) for p in poly] for poly in t.polygons]))
    return out


def canonical_form(t: Tiling) -> tuple:
    """Least tile-set key over the symmetries of the region (8 for a square, 4 otherwise)."""
    return min(_images(t))


def orbit_size(t: Tiling) -> int:
    return len(set(_images(t)))


# ---------------------------------------------------------------------------
# sweeps


def square_for(proto: Prototile, n: int) -> Region | None:
    """The square with the area of n tiles, if its side lies in the field."""
    side = qn_sqrt(proto.area() * n)
    if side is None:
        return None
    return Region(side, side)


def sweep(prototiles: list[Prototile], n_range, region_rule=square_for, node_limit: int = 10**7,
          threads: int = 1) -> list[dict]:
    from .hgraph import build_hgraph, angle_pattern_check, hypotenuse_paired, pairing_conjecture_check
    from .geometry import TRAPEZOID

    rows = []
    for proto in prototiles:
        for n in n_range:
            region = region_rule(proto, n)
            row: dict = {"prototile": proto.kind, "N": n}
            if proto.kind == TRAPEZOID:
                row["x"] = str(proto.x)
            if region is None:
                row["skipped"] = "no region in the field"
                rows.append(row)
                continue
            row["region"] = [str(region.width), str(region.height)]
            res = enumerate_tilings(SearchConfig(proto, region, n, node_limit=node_limit), threads)
            row.update(res.summary())
            if proto.kind == TRAPEZOID:
                row["eulerian"] = []
                row["pairingConjecture"] = []
                row["hypotenusePaired"] = []
                for t in res.tilings:
                    g = build_hgraph(t)
                    row["eulerian"].append(angle_pattern_check(t, g).eulerian)
                    row["pairingConjecture"].append(pairing_conjecture_check(t, g))
                    row["hypotenusePaired"].append(hypotenuse_paired(t, g))
            rows.append(row)
    return rows
