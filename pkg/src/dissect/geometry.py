"""Exact planar primitives over a quadratic field.

Rotations are drawn from a finite cyclic group whose matrices are exact in
Q(sqrt d): multiples of pi/6 when d = 3, of pi/4 when d = 2, and of pi/2
otherwise.  An :class:`Isometry` stores the rotation as an index into that
group, so every image stays inside the field.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .exactnum import AngleMode, QuadraticNumber, RadicandMismatch

__all__ = [
    "GeometryError",
    "GroupError",
    "Point",
    "Direction",
    "Segment",
    "Isometry",
    "Prototile",
    "rotation_order",
    "rotation_entries",
    "trig_of_alpha",
    "apply_isometry",
    "polygon_area",
    "signed_area",
    "segment_relation",
    "direction_equiv",
    "cross",
    "dot",
    "clip_convex",
    "convex_intersection_area",
    "convex_difference",
    "point_in_convex",
    "point_on_segment",
    "ccw_key",
]


class GeometryError(ValueError):
    pass


class GroupError(GeometryError):
    """A rotation or angle outside the finite group allowed for the field."""


class Point(NamedTuple):
    x: QuadraticNumber
    y: QuadraticNumber

    def __add__(self, other: Point) -> Point:  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> Point:
        return Point(self.x * k, self.y * k)

    def key(self) -> tuple:
        return (self.x.key, self.y.key)

    def lex_yx(self) -> tuple:
        """Ordering key: by y, then x (exact value order)."""
        return (_ValueKey(self.y), _ValueKey(self.x))

    def to_float(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def to_json(self) -> list:
        return [self.x.to_json(), self.y.to_json()]


# A vector in the plane is represented by the same tuple type.
Direction = Point


class _ValueKey:
    """Wraps a QuadraticNumber so tuples of them sort by exact value."""

    __slots__ = ("v",)

    def __init__(self, v: QuadraticNumber) -> None:
        self.v = v

    def __lt__(self, other: _ValueKey) -> bool:
        return self.v < other.v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _ValueKey) and self.v == other.v

    def __hash__(self) -> int:
        return hash(self.v)


class Segment(NamedTuple):
    p: Point
    q: Point


def cross(u: Point, v: Point) -> QuadraticNumber:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> QuadraticNumber:
    return u[0] * v[0] + u[1] * v[1]


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c (positive = counterclockwise)."""
    return cross(b - a, c - a).sign()


def ccw_key(v: Point) -> tuple:
    """Sort key ordering nonzero vectors by counterclockwise angle from +x in [0, 2pi)."""
    upper = v[1].sign() > 0 or (v[1].sign() == 0 and v[0].sign() > 0)
    return (0 if upper else 1, _AngleKey(v))


class _AngleKey:
    __slots__ = ("v",)

    def __init__(self, v: Point) -> None:
        self.v = v

    def __lt__(self, other: _AngleKey) -> bool:
        # within one half-plane: u before w iff cross(u, w) > 0
        return cross(self.v, other.v).sign() > 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _AngleKey) and cross(self.v, other.v).sign() == 0


def same_direction(u: Point, v: Point) -> bool:
    return cross(u, v).sign() == 0 and dot(u, v).sign() > 0


# ---------------------------------------------------------------------------
# Rotation groups


def rotation_order(d: int) -> int:
    """Order of the rotation group used for field Q(sqrt d)."""
    return {3: 12, 2: 8}.get(d, 4)


@lru_cache(maxsize=None)
def rotation_entries(k: int, d: int) -> tuple[QuadraticNumber, QuadraticNumber]:
    """(cos, sin) of the k-th group rotation for field d, exactly."""
    n = rotation_order(d)
    k %= n
    half = Fraction(1, 2)
    if n == 12:
        # multiples of pi/6
        cos_tab = [(1, 0), (0, half), (half, 0), (0, 0), (-half, 0), (0, -half),
                   (-1, 0), (0, -half), (-half, 0), (0, 0), (half, 0), (0, half)]
        # sin(k pi/6) = cos((k-3) pi/6)
        c, s = cos_tab[k], cos_tab[(k - 3) % 12]
        return QuadraticNumber(c[0], c[1], d), QuadraticNumber(s[0], s[1], d)
    if n == 8:
        cos_tab = [(1, 0), (0, half), (0, 0), (0, -half), (-1, 0), (0, -half), (0, 0), (0, half)]
        c = cos_tab[k]
        s = cos_tab[(k - 2) % 8]
        return QuadraticNumber(c[0], c[1], d), QuadraticNumber(s[0], s[1], d)
    cos_tab = [1, 0, -1, 0]
    return QuadraticNumber(cos_tab[k], 0, d), QuadraticNumber(cos_tab[(k - 1) % 4], 0, d)


def rotate(v: Point, k: int, d: int) -> Point:
    c, s = rotation_entries(k, d)
    return Point(c * v[0] - s * v[1], s * v[0] + c * v[1])


def trig_of_alpha(mode: AngleMode, d: int) -> tuple[QuadraticNumber, QuadraticNumber, int]:
    """(cos alpha, sin alpha, group index of alpha) for a bound alpha in field d."""
    if mode.is_generic:
        raise GroupError("a concrete trapezoid needs a bound alpha")
    n = rotation_order(d)
    k = mode.alpha * n / 2  # alpha / (2 pi / n)
    if k.denominator != 1:
        raise GroupError(
            f"alpha = {mode.p}/{mode.q}*pi is not a multiple of 2pi/{n} "
            f"and cannot be represented in Q(sqrt {d})"
        )
    c, s = rotation_entries(int(k), d)
    return c, s, int(k)


# ---------------------------------------------------------------------------
# Isometries


@dataclass(frozen=True)
class Isometry:
    """p -> R_k (S p) + t, with S the reflection y -> -y when ``reflect`` is set."""

    rot: int
    reflect: bool
    dx: QuadraticNumber
    dy: QuadraticNumber

    @property
    def d(self) -> int:
        return self.dx.d

    def __post_init__(self) -> None:
        if self.dx.d != self.dy.d:
            raise RadicandMismatch(self.dx.d, self.dy.d)
        object.__setattr__(self, "rot", self.rot % rotation_order(self.dx.d))

    @classmethod
    def identity(cls, d: int) -> Isometry:
        z = QuadraticNumber(0, 0, d)
        return cls(0, False, z, z)

    def linear(self, p: Point) -> Point:
        x, y = p
        if self.reflect:
            y = -y
        return rotate(Point(x, y), self.rot, self.d)

    def __call__(self, p: Point) -> Point:
        q = self.linear(p)
        return Point(q[0] + self.dx, q[1] + self.dy)

    def compose(self, inner: Isometry) -> Isometry:
        """self o inner."""
        # R1 S^e1 R2 S^e2 = R_{k1 + (-1)^e1 k2} S^{e1 xor e2}
        k = self.rot + (-inner.rot if self.reflect else inner.rot)
        t = self(Point(inner.dx, inner.dy))
        return Isometry(k, self.reflect != inner.reflect, t[0], t[1])

    def sort_key(self) -> tuple:
        return (_ValueKey(self.dy), _ValueKey(self.dx), self.rot, self.reflect)

    def to_json(self) -> dict:
        return {"rot": self.rot, "reflect": self.reflect, "dx": self.dx.to_json(), "dy": self.dy.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> Isometry:
        if not isinstance(doc, dict) or set(doc) != {"rot", "reflect", "dx", "dy"}:
            raise ValueError("isometry must have keys rot, reflect, dx, dy")
        if not isinstance(doc["rot"], int) or isinstance(doc["rot"], bool):
            raise ValueError("rot must be an integer")
        if not isinstance(doc["reflect"], bool):
            raise ValueError("reflect must be a boolean")
        return cls(doc["rot"], doc["reflect"], QuadraticNumber.from_json(doc["dx"]), QuadraticNumber.from_json(doc["dy"]))


def apply_isometry(iso: Isometry, p: Point) -> Point:
    if p[0].d != iso.d:
        raise GroupError(f"rotation entries of Q(sqrt {iso.d}) applied to a point of Q(sqrt {p[0].d})")
    return iso(p)


# ---------------------------------------------------------------------------
# Prototiles

TRAPEZOID = "trapezoid"
RECTANGLE = "rectangle"
POLYGON = "polygon"

# trapezoid side labels, as (from, to) vertex labels
TRAPEZOID_SIDES = (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"))


@dataclass(frozen=True)
class Prototile:
    """One of RightTrapezoid(x, alpha), Rectangle(w, h), ConvexPolygon(vertices).

    ``vertices`` is stored counterclockwise.  For a trapezoid ``labels`` gives
    the label of each stored vertex; the canonical placement has a, b, c, d
    clockwise, hypotenuse a-b of length 2, angle alpha at a and beta at b, and
    side lengths d-a = x + 2cos(alpha), b-c = x, c-d = 2sin(alpha).
    """

    kind: str
    vertices: tuple[Point, ...]
    labels: tuple[str, ...] = ()
    params: tuple = ()
    angles: tuple = ()  # ExactAngle per stored vertex, when expressible
    d: int = 3
    allowed_rotations: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def right_trapezoid(cls, x: QuadraticNumber, mode: AngleMode) -> Prototile:
        from .exactnum import ALPHA, BETA, RIGHT

        d = x.d
        if x.sign() <= 0:
            raise GeometryError("degenerate prototile: x must be positive")
        cos_a, sin_a, _ = trig_of_alpha(mode, d)
        o, h = cos_a * 2, sin_a * 2
        zero = QuadraticNumber(0, 0, d)
        a = Point(x + o, h)
        b = Point(x, zero)
        c = Point(zero, zero)
        dd = Point(zero, h)
        # a, b, c, d is clockwise; store counterclockwise as d, c, b, a
        verts = (dd, c, b, a)
        return cls(
            TRAPEZOID,
            verts,
            labels=("d", "c", "b", "a"),
            params=(x, mode),
            angles=(RIGHT, RIGHT, BETA, ALPHA),
            d=d,
            allowed_rotations=tuple(range(rotation_order(d))),
        )

    @classmethod
    def rectangle(cls, w: QuadraticNumber, h: QuadraticNumber) -> Prototile:
        from .exactnum import RIGHT

        if w.d != h.d:
            raise RadicandMismatch(w.d, h.d)
        if w.sign() <= 0 or h.sign() <= 0:
            raise GeometryError("degenerate prototile: rectangle sides must be positive")
        d = w.d
        zero = QuadraticNumber(0, 0, d)
        verts = (Point(zero, zero), Point(w, zero), Point(w, h), Point(zero, h))
        step = rotation_order(d) // 4
        return cls(
            RECTANGLE,
            verts,
            params=(w, h),
            angles=(RIGHT,) * 4,
            d=d,
            allowed_rotations=tuple(range(0, rotation_order(d), step)),
        )

    @classmethod
    def convex_polygon(cls, vertices: Sequence[Point]) -> Prototile:
        if len(vertices) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        d = vertices[0][0].d
        verts = tuple(vertices)
        if signed_area(verts).sign() < 0:
            verts = tuple(reversed(verts))
        n = len(verts)
        for i in range(n):
            if orient(verts[i - 1], verts[i], verts[(i + 1) % n]) <= 0:
                raise GeometryError("degenerate prototile: polygon is not strictly convex")
        return cls(POLYGON, verts, d=d, allowed_rotations=tuple(range(rotation_order(d))))

    @property
    def q(self) -> int:
        return len(self.vertices)

    def labeled(self, label: str) -> Point:
        return self.vertices[self.labels.index(label)]

    @property
    def x(self) -> QuadraticNumber:
        if self.kind != TRAPEZOID:
            raise GeometryError("x is defined for trapezoids only")
        return self.params[0]

    @property
    def mode(self) -> AngleMode:
        return self.params[1]

    def area(self) -> QuadraticNumber:
        return signed_area(self.vertices)

    def side_label(self, i: int) -> str:
        """Label of stored side i (vertex i -> i+1), as in 'ab', 'bc', 'cd', 'da'."""
        u, v = self.labels[i], self.labels[(i + 1) % len(self.labels)]
        for s, t in TRAPEZOID_SIDES:
            if {u, v} == {s, t}:
                return s + t
        raise GeometryError("not a trapezoid side")


def placed_polygon(proto: Prototile, iso: Isometry) -> tuple[Point, ...]:
    """Image of the prototile, stored counterclockwise; index i corresponds to
    prototile vertex i for rotations and to vertex i in reversed order for
    reflections (see :func:`placed_vertex_indices`)."""
    pts = [iso(p) for p in proto.vertices]
    if iso.reflect:
        pts.reverse()
    return tuple(pts)


def placed_vertex_indices(proto: Prototile, iso: Isometry) -> tuple[int, ...]:
    n = len(proto.vertices)
    idx = list(range(n))
    if iso.reflect:
        idx.reverse()
    return tuple(idx)


# ---------------------------------------------------------------------------
# Polygons


def signed_area(poly: Sequence[Point]) -> QuadraticNumber:
    n = len(poly)
    total = poly[0][0] * 0
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        total = total + (p[0] * q[1] - q[0] * p[1])
    return total / 2


def polygon_area(poly: Sequence[Point]) -> QuadraticNumber:
    """Exact shoelace area; positive for counterclockwise input."""
    if len(poly) < 3:
        raise GeometryError("degenerate polygon: fewer than 3 vertices")
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        for j in range(i + 1, n):
            c, e = poly[j], poly[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segment_relation(Segment(a, b), Segment(c, e))[0] != "disjoint":
                raise GeometryError("degenerate polygon: self-intersecting")
    area = signed_area(poly)
    if area.sign() == 0:
        raise GeometryError("degenerate polygon: zero area")
    return area


def point_on_segment(p: Point, a: Point, b: Point, strict: bool = False) -> bool:
    if cross(b - a, p - a).sign() != 0:
        return False
    t = dot(p - a, b - a)
    n = dot(b - a, b - a)
    if strict:
        return t.sign() > 0 and (n - t).sign() > 0
    return t.sign() >= 0 and (n - t).sign() >= 0


def segment_relation(s1: Segment, s2: Segment):
    """('disjoint',), ('point', P) or ('overlap', Segment)."""
    a, b = s1
    c, e = s2
    r = b - a
    s = e - c
    denom = cross(r, s)
    if denom.sign() == 0:
        if cross(r, c - a).sign() != 0:
            return ("disjoint",)
        # collinear: project on r
        rr = dot(r, r)
        t0 = dot(c - a, r) / rr
        t1 = dot(e - a, r) / rr
        lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
        zero = rr * 0
        start = lo if lo > zero else zero
        end = hi if hi < 1 else zero + 1
        cmp = (end - start).sign()
        if cmp < 0:
            return ("disjoint",)
        p = a + r.scale(start)
        if cmp == 0:
            return ("point", p)
        return ("overlap", Segment(p, a + r.scale(end)))
    t = cross(c - a, s) / denom
    u = cross(c - a, r) / denom
    if t.sign() < 0 or (t - 1).sign() > 0 or u.sign() < 0 or (u - 1).sign() > 0:
        return ("disjoint",)
    return ("point", a + r.scale(t))


def direction_equiv(u: Point, v: Point) -> bool:
    """Parallel or perpendicular, decided exactly."""
    return cross(u, v).sign() == 0 or dot(u, v).sign() == 0


def point_in_convex(p: Point, poly: Sequence[Point], strict: bool = True) -> bool:
    n = len(poly)
    for i in range(n):
        o = orient(poly[i], poly[(i + 1) % n], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def _clip_halfplane(poly: list[Point], a: Point, b: Point, keep_left: bool) -> list[Point]:
    """Sutherland-Hodgman step against the line a->b."""
    if not poly:
        return []
    out: list[Point] = []
    ab = b - a
    n = len(poly)
    sides = []
    for p in poly:
        s = cross(ab, p - a).sign()
        sides.append(s if keep_left else -s)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp, sq = sides[i], sides[(i + 1) % n]
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            # intersection of p->q with the line
            pq = q - p
            t = cross(ab, a - p) / cross(ab, pq)
            out.append(p + pq.scale(t))
    return _dedupe(out)


def _dedupe(poly: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in poly:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    # drop collinear points so pieces stay strictly convex
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            if orient(out[i - 1], out[i], out[(i + 1) % n]) == 0:
                del out[i]
                changed = True
                break
    return out


def clip_convex(subject: Sequence[Point], clip: Sequence[Point]) -> list[Point]:
    """Intersection of two counterclockwise convex polygons (may be degenerate)."""
    out = list(subject)
    n = len(clip)
    for i in range(n):
        out = _clip_halfplane(out, clip[i], clip[(i + 1) % n], keep_left=True)
        if len(out) < 3:
            return []
    return out


def convex_intersection_area(p1: Sequence[Point], p2: Sequence[Point]) -> QuadraticNumber:
    inter = clip_convex(p1, p2)
    if len(inter) < 3:
        return p1[0][0] * 0
    return signed_area(inter)


def convex_difference(subject: Sequence[Point], hole: Sequence[Point]) -> list[list[Point]]:
    """subject minus hole, as interior-disjoint convex pieces of positive area."""
    pieces: list[list[Point]] = []
    remaining = list(subject)
    n = len(hole)
    for i in range(n):
        a, b = hole[i], hole[(i + 1) % n]
        outside = _clip_halfplane(remaining, a, b, keep_left=False)
        if len(outside) >= 3 and signed_area(outside).sign() > 0:
            pieces.append(outside)
        remaining = _clip_halfplane(remaining, a, b, keep_left=True)
        if len(remaining) < 3 or signed_area(remaining).sign() <= 0:
            break
    return pieces


def bounding_points(polys: Iterable[Sequence[Point]]) -> list[Point]:
    return [p for poly in polys for p in poly]
