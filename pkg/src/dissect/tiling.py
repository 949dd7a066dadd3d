"""Tiling data model, exact validation, and the JSON document format."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .exactnum import AngleMode, ExactAngle, QuadraticNumber, RadicandMismatch
from .geometry import (
    POLYGON,
    RECTANGLE,
    TRAPEZOID,
    GeometryError,
    GroupError,
    Isometry,
    Point,
    Prototile,
    Segment,
    convex_intersection_area,
    placed_polygon,
    placed_vertex_indices,
    point_in_convex,
    segment_relation,
    signed_area,
)

__all__ = [
    "SchemaError",
    "InvalidTilingError",
    "Region",
    "PlacedTile",
    "Tiling",
    "Failure",
    "ValidationReport",
    "TileVertex",
    "Side",
    "validate",
    "extract_vertices_and_sides",
    "load",
    "save",
    "load_path",
]


class SchemaError(ValueError):
    """The document does not match the tiling schema."""

    def __init__(self, message: str, where: str = "") -> None:
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


class InvalidTilingError(ValueError):
    """An operation that needs a valid tiling was given an invalid one."""

    def __init__(self, report: ValidationReport) -> None:
        kinds = ", ".join(sorted({f.kind for f in report.failures}))
        super().__init__(f"tiling is invalid ({kinds})")
        self.report = report


@dataclass(frozen=True)
class Region:
    width: QuadraticNumber
    height: QuadraticNumber

    def __post_init__(self) -> None:
        if self.width.d != self.height.d:
            raise RadicandMismatch(self.width.d, self.height.d)
        if self.width.sign() <= 0 or self.height.sign() <= 0:
            raise GeometryError("region sides must be positive")

    @property
    def d(self) -> int:
        return self.width.d

    @property
    def is_square(self) -> bool:
        return self.width == self.height

    def area(self) -> QuadraticNumber:
        return self.width * self.height

    def polygon(self) -> tuple[Point, ...]:
        z = self.width * 0
        return (Point(z, z), Point(self.width, z), Point(self.width, self.height), Point(z, self.height))

    def corners(self) -> tuple[Point, ...]:
        return self.polygon()

    def contains(self, p: Point) -> bool:
        return p[0].sign() >= 0 and p[1].sign() >= 0 and p[0] <= self.width and p[1] <= self.height

    def on_boundary(self, p: Point) -> bool:
        return self.contains(p) and (
            p[0].sign() == 0 or p[1].sign() == 0 or p[0] == self.width or p[1] == self.height
        )

    def is_corner(self, p: Point) -> bool:
        return (p[0].sign() == 0 or p[0] == self.width) and (p[1].sign() == 0 or p[1] == self.height)


@dataclass(frozen=True)
class PlacedTile:
    id: int
    iso: Isometry


@dataclass(frozen=True)
class TileVertex:
    """One corner of one placed tile."""

    tile: int
    index: int  # index into the tile's counterclockwise polygon
    point: Point
    label: str  # 'a'..'d' for trapezoids, '' otherwise
    angle: ExactAngle | None


@dataclass(frozen=True)
class Side:
    """One side of one placed tile; sides of different tiles stay distinct."""

    tile: int
    index: int  # side from polygon vertex index to index + 1
    segment: Segment
    label: str  # 'ab', 'bc', 'cd', 'da' for trapezoids, '' otherwise


@dataclass(frozen=True)
class Tiling:
    prototile: Prototile
    region: Region
    tiles: tuple[PlacedTile, ...]
    angle_mode: AngleMode = field(default_factory=AngleMode)

    @classmethod
    def from_isometries(
        cls, prototile: Prototile, region: Region, isos: Sequence[Isometry], angle_mode: AngleMode | None = None
    ) -> Tiling:
        if angle_mode is None:
            angle_mode = prototile.mode if prototile.kind == TRAPEZOID else AngleMode()
        return cls(prototile, region, tuple(PlacedTile(j, iso) for j, iso in enumerate(isos)), angle_mode)

    @property
    def d(self) -> int:
        return self.region.d

    @property
    def n(self) -> int:
        return len(self.tiles)

    @property
    def q(self) -> int:
        return self.prototile.q

    @cached_property
    def polygons(self) -> tuple[tuple[Point, ...], ...]:
        return tuple(placed_polygon(self.prototile, t.iso) for t in self.tiles)

    @cached_property
    def tile_vertices(self) -> tuple[tuple[TileVertex, ...], ...]:
        proto = self.prototile
        out = []
        for j, t in enumerate(self.tiles):
            idx = placed_vertex_indices(proto, t.iso)
            poly = self.polygons[j]
            verts = []
            for i, p in enumerate(poly):
                src = idx[i]
                label = proto.labels[src] if proto.labels else ""
                angle = proto.angles[src] if proto.angles else None
                verts.append(TileVertex(j, i, p, label, angle))
            out.append(tuple(verts))
        return tuple(out)

    @cached_property
    def sides(self) -> tuple[Side, ...]:
        out = []
        for j, verts in enumerate(self.tile_vertices):
            n = len(verts)
            for i in range(n):
                u, v = verts[i], verts[(i + 1) % n]
                label = ""
                if u.label:
                    pair = {u.label, v.label}
                    label = next(s + t for s, t in (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")) if {s, t} == pair)
                out.append(Side(j, i, Segment(u.point, v.point), label))
        return tuple(out)

    def labeled_point(self, j: int, label: str) -> Point:
        for v in self.tile_vertices[j]:
            if v.label == label:
                return v.point
        raise KeyError(label)

    def with_tiles(self, isos: Sequence[Isometry]) -> Tiling:
        return Tiling.from_isometries(self.prototile, self.region, isos, self.angle_mode)


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Failure:
    kind: str  # overlap | gap | outOfRegion | areaMismatch | outOfGroup
    detail: tuple = ()

    def to_json(self) -> dict:
        detail = [p.to_json() if isinstance(p, Point) else p for p in self.detail]
        return {"kind": self.kind, "detail": detail}


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[Failure, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.failures

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": [f.to_json() for f in self.failures]}


def _bbox(poly: Sequence[Point]):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), max(xs), min(ys), max(ys)


def _overlaps(args) -> bool:
    p1, p2, b1, b2 = args
    if b1[1] <= b2[0] or b2[1] <= b1[0] or b1[3] <= b2[2] or b2[3] <= b1[2]:
        return False
    return convex_intersection_area(p1, p2).sign() > 0


def _coverage_witnesses(t: Tiling, extra_cuts: bool) -> list[Point]:
    """Interior witness points of the vertical decomposition of the arrangement.

    Every cell lies between two consecutive event abscissae and two
    consecutive edges crossing that slab, so no tile edge passes through it
    and each tile either contains the whole cell or misses it.
    """
    region = t.region
    edges: list[tuple[Point, Point]] = []
    for poly in list(t.polygons) + [region.polygon()]:
        n = len(poly)
        for i in range(n):
            edges.append((poly[i], poly[(i + 1) % n]))
    xs = {p[0] for poly in t.polygons for p in poly}
    xs.update({region.width * 0, region.width})
    if extra_cuts:
        for (a, b), (c, e) in combinations(edges, 2):
            rel = segment_relation(Segment(a, b), Segment(c, e))
            if rel[0] == "point":
                xs.add(rel[1][0])
    xs = sorted(x for x in xs if x.sign() >= 0 and x <= region.width)
    witnesses: list[Point] = []
    for x0, x1 in zip(xs, xs[1:]):
        xm = (x0 + x1) / 2
        ys = set()
        for a, b in edges:
            lo, hi = (a, b) if a[0] <= b[0] else (b, a)
            if lo[0] == hi[0] or lo[0] > x0 or hi[0] < x1:
                continue
            ys.add(lo[1] + (hi[1] - lo[1]) * (xm - lo[0]) / (hi[0] - lo[0]))
        ys = sorted(y for y in ys if y.sign() >= 0 and y <= region.height)
        for y0, y1 in zip(ys, ys[1:]):
            witnesses.append(Point(xm, (y0 + y1) / 2))
    return witnesses


def validate(t: Tiling, threads: int = 1) -> ValidationReport:
    """Exact check that the tiles form a non-overlapping cover of the region."""
    if not t.tiles:
        raise ValueError("tiling has no tiles")
    failures: list[Failure] = []
    allowed = set(t.prototile.allowed_rotations)
    for tile in t.tiles:
        if tile.iso.d != t.d:
            raise RadicandMismatch(tile.iso.d, t.d)
        if tile.iso.rot not in allowed:
            failures.append(Failure("outOfGroup", (tile.id,)))
    total = sum((signed_area(p) for p in t.polygons), t.region.width * 0)
    if total != t.region.area():
        failures.append(Failure("areaMismatch", (str(total), str(t.region.area()))))
    for tile, poly in zip(t.tiles, t.polygons):
        if not all(t.region.contains(p) for p in poly):
            failures.append(Failure("outOfRegion", (tile.id,)))
    boxes = [_bbox(p) for p in t.polygons]
    pairs = list(combinations(range(t.n), 2))
    jobs = [(t.polygons[i], t.polygons[j], boxes[i], boxes[j]) for i, j in pairs]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = list(pool.map(_overlaps, jobs))
    else:
        hits = [_overlaps(job) for job in jobs]
    overlapping = False
    for (i, j), hit in zip(pairs, hits):
        if hit:
            overlapping = True
            failures.append(Failure("overlap", (t.tiles[i].id, t.tiles[j].id)))
    for w in _coverage_witnesses(t, extra_cuts=overlapping):
        if not any(point_in_convex(w, poly) for poly, box in zip(t.polygons, boxes)
                   if box[0] <= w[0] <= box[1] and box[2] <= w[1] <= box[3]):
            failures.append(Failure("gap", (w,)))
    return ValidationReport(tuple(failures))


def require_valid(t: Tiling) -> None:
    report = validate(t)
    if not report.valid:
        raise InvalidTilingError(report)


def extract_vertices_and_sides(t: Tiling) -> tuple[list[Point], list[Side]]:
    """The deduplicated vertex set of all tiles, and every tile side."""
    seen: dict[Point, None] = {}
    for verts in t.tile_vertices:
        for v in verts:
            seen.setdefault(v.point, None)
    return list(seen), list(t.sides)


# ---------------------------------------------------------------------------
# JSON document


def _qn(doc, d: int, where: str) -> QuadraticNumber:
    try:
        v = QuadraticNumber.from_json(doc)
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc), where) from None
    if v.d != d:
        raise SchemaError(f"radicand mismatch: sqrt({v.d}) in a Q(sqrt {d}) document", where)
    return v


def _prototile_to_json(p: Prototile) -> dict:
    if p.kind == TRAPEZOID:
        return {"kind": TRAPEZOID, "x": p.x.to_json()}
    if p.kind == RECTANGLE:
        return {"kind": RECTANGLE, "w": p.params[0].to_json(), "h": p.params[1].to_json()}
    return {"kind": POLYGON, "vertices": [v.to_json() for v in p.vertices]}


def _prototile_from_json(doc, d: int, mode: AngleMode) -> Prototile:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("prototile must be an object with a kind", "prototile")
    kind = doc["kind"]
    try:
        if kind == TRAPEZOID:
            x = _qn(doc.get("x"), d, "prototile.x")
            if mode.is_generic:
                raise SchemaError("a trapezoid prototile needs a bound angle mode", "angle")
            return Prototile.right_trapezoid(x, mode)
        if kind == RECTANGLE:
            return Prototile.rectangle(_qn(doc.get("w"), d, "prototile.w"), _qn(doc.get("h"), d, "prototile.h"))
        if kind == POLYGON:
            verts = doc.get("vertices")
            if not isinstance(verts, list):
                raise SchemaError("vertices must be a list", "prototile.vertices")
            pts = []
            for i, v in enumerate(verts):
                if not isinstance(v, list) or len(v) != 2:
                    raise SchemaError("vertex must be [x, y]", f"prototile.vertices[{i}]")
                pts.append(Point(_qn(v[0], d, f"prototile.vertices[{i}][0]"), _qn(v[1], d, f"prototile.vertices[{i}][1]")))
            return Prototile.convex_polygon(pts)
    except GroupError:
        raise
    except GeometryError as exc:
        raise GeometryError(f"prototile: {exc}") from None
    raise SchemaError(f"unknown prototile kind {kind!r}", "prototile.kind")


def load(doc: bytes | str) -> Tiling:
    """Parse a tiling document.

    Raises SchemaError for malformed documents (with the offending field or
    line), GeometryError for degenerate prototiles, and GroupError for
    rotations or angles outside the field's rotation group.
    """
    try:
        data = json.loads(doc)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise SchemaError("document must be a JSON object")
    missing = {"field", "region", "prototile", "angle", "tiles"} - set(data)
    if missing:
        raise SchemaError(f"missing keys {sorted(missing)}")
    d = data["field"]
    if not isinstance(d, int) or isinstance(d, bool):
        raise SchemaError("field must be an integer", "field")
    reg = data["region"]
    if not isinstance(reg, dict) or set(reg) != {"w", "h"}:
        raise SchemaError("region must have keys w, h", "region")
    try:
        region = Region(_qn(reg["w"], d, "region.w"), _qn(reg["h"], d, "region.h"))
    except GeometryError as exc:
        raise SchemaError(str(exc), "region") from None
    try:
        mode = AngleMode.from_json(data["angle"]) if isinstance(data["angle"], dict) else None
    except ValueError as exc:
        raise GeometryError(f"angle: {exc}") from None
    if mode is None:
        raise SchemaError("angle must be an object", "angle")
    proto = _prototile_from_json(data["prototile"], d, mode)
    tiles = data["tiles"]
    if not isinstance(tiles, list):
        raise SchemaError("tiles must be a list", "tiles")
    isos = []
    allowed = set(proto.allowed_rotations)
    for i, doc_t in enumerate(tiles):
        where = f"tiles[{i}]"
        if not isinstance(doc_t, dict) or set(doc_t) != {"rot", "reflect", "dx", "dy"}:
            raise SchemaError("isometry must have keys rot, reflect, dx, dy", where)
        if not isinstance(doc_t["rot"], int) or isinstance(doc_t["rot"], bool):
            raise SchemaError("rot must be an integer", where + ".rot")
        if not isinstance(doc_t["reflect"], bool):
            raise SchemaError("reflect must be a boolean", where + ".reflect")
        iso = Isometry(doc_t["rot"], doc_t["reflect"], _qn(doc_t["dx"], d, where + ".dx"), _qn(doc_t["dy"], d, where + ".dy"))
        if iso.rot not in allowed:
            raise GroupError(f"{where}: rotation index {doc_t['rot']} is outside the allowed group for this prototile")
        isos.append(iso)
    return Tiling.from_isometries(proto, region, isos, mode)


def load_path(path) -> Tiling:
    with open(path, "rb") as fh:
        return load(fh.read())


def to_json(t: Tiling) -> dict:
    tiles = sorted((tile.iso for tile in t.tiles), key=Isometry.sort_key)
    return {
        "field": t.d,
        "region": {"w": t.region.width.to_json(), "h": t.region.height.to_json()},
        "prototile": _prototile_to_json(t.prototile),
        "angle": t.angle_mode.to_json(),
        "tiles": [iso.to_json() for iso in tiles],
    }


def save(t: Tiling) -> bytes:
    """Canonical document: fixed key order, tiles sorted by (dy, dx, rot, reflect)."""
    return (json.dumps(to_json(t), indent=1) + "\n").encode()
