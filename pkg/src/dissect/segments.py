"""Maximal segments, side-length relations and special-segment chains.

A maximal segment is a connected component of the union of collinear tile
sides.  Walking from its lexicographically least endpoint ``u`` (least y,
then least x) to ``v``, tiles on the left form the upper part and tiles on
the right the lower part.  The side sequences record, in order from ``u``,
the sides each part contributes.

Everything about heads and chains is specific to alpha = pi/3, where the
side lengths are x, x + 1, 2 and sqrt3.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import AngleMode, QuadraticNumber, qn_sqrt
from .geometry import (
    RECTANGLE,
    TRAPEZOID,
    Point,
    cross,
    dot,
    orient,
    rotate,
    rotation_order,
    same_direction,
    trig_of_alpha,
)
from .incidence import VertexIncidence, build_incidence
from .tiling import Tiling

__all__ = [
    "SideRef",
    "MaximalSegment",
    "HalfSegment",
    "HeadInformation",
    "SideRelation",
    "SolveResult",
    "AreaCheck",
    "ThreeBetaVertex",
    "ChainStep",
    "ChainReport",
    "extract_maximal_segments",
    "half_segment",
    "boundary_identified_relations",
    "solve_x",
    "sqrt3_sides_even",
    "relation_from_sequences",
    "is_special",
    "unit_direction",
    "AreaMismatchError",
    "area_constraint",
    "area_constraint_check",
    "pure2_check",
    "find_3beta_vertices",
    "head_information",
    "scan_special_segments",
    "prec",
    "chain_frame",
    "chain_step",
    "odd_n_obstruction_report",
    "segments_report",
]

PI_3 = AngleMode.bound(1, 3)
UPPER, LOWER = "upper", "lower"


@dataclass(frozen=True)
class SideRef:
    tile: int
    label: str
    length: QuadraticNumber | None
    p: Point  # endpoint nearer the segment's start
    q: Point


@dataclass(frozen=True)
class MaximalSegment:
    u: Point
    v: Point
    upper: tuple[SideRef, ...]
    lower: tuple[SideRef, ...]

    @property
    def direction(self) -> Point:
        return self.v - self.u

    @property
    def boundary(self) -> bool:
        return not self.upper or not self.lower

    @property
    def upper_seq(self) -> tuple:
        return tuple(s.length for s in self.upper)

    @property
    def lower_seq(self) -> tuple:
        return tuple(s.length for s in self.lower)

    def to_json(self) -> dict:
        return {
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "upper": [[s.tile, s.label] for s in self.upper],
            "lower": [[s.tile, s.label] for s in self.lower],
        }


def _side_lengths(t: Tiling) -> dict[str, QuadraticNumber]:
    proto = t.prototile
    if proto.kind != TRAPEZOID:
        return {}
    cos_a, sin_a, _ = trig_of_alpha(proto.mode, proto.d)
    x = proto.x
    return {"ab": x * 0 + 2, "bc": x, "cd": sin_a * 2, "da": x + cos_a * 2}


def _length(t: Tiling, label: str, vec: Point, table: dict) -> QuadraticNumber | None:
    if label in table:
        return table[label]
    if t.prototile.kind == RECTANGLE:
        return abs_qn(vec[0]) + abs_qn(vec[1])
    return qn_sqrt(dot(vec, vec))


def abs_qn(v: QuadraticNumber) -> QuadraticNumber:
    return -v if v.sign() < 0 else v


def _line_key(p: Point, q: Point):
    """Canonical (direction, offset) of the line through p and q."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx.sign() != 0:
        n = Point(dx / dx, dy / dx)
    else:
        n = Point(dx * 0, dy / dy)
    return n, cross(n, p)


def _param(p: Point, n: Point) -> QuadraticNumber:
    return p[0] if n[0].sign() != 0 else p[1]


def extract_maximal_segments(t: Tiling) -> list[MaximalSegment]:
    lengths = _side_lengths(t)
    centroid = []
    for poly in t.polygons:
        s = Point(sum((p[0] for p in poly), poly[0][0] * 0), sum((p[1] for p in poly), poly[0][0] * 0))
        centroid.append(s.scale(Fraction(1, len(poly))))
    lines = defaultdict(list)
    for side in t.sides:
        n, off = _line_key(side.segment.p, side.segment.q)
        lines[(n, off)].append(side)
    out = []
    for (n, _), sides in lines.items():
        ivs = []
        for s in sides:
            p, q = s.segment.p, s.segment.q
            if _param(q, n) < _param(p, n):
                p, q = q, p
            ivs.append((_param(p, n), _param(q, n), p, q, s))
        ivs.sort(key=lambda r: (r[0], r[1]))
        groups, cur, end = [], [], None
        for r in ivs:
            if cur and r[0] > end:
                groups.append(cur)
                cur, end = [], None
            cur.append(r)
            if end is None or r[1] > end:
                end = r[1]
        groups.append(cur)
        for g in groups:
            lo = min(g, key=lambda r: r[0])[2]
            hi = max(g, key=lambda r: r[1])[3]
            u, v = (hi, lo) if hi.lex_yx() < lo.lex_yx() else (lo, hi)
            upper, lower = [], []
            for _, _, p, q, s in g:
                if dot(q - p, v - u).sign() < 0:
                    p, q = q, p
                ref = SideRef(s.tile, s.label, _length(t, s.label, q - p, lengths), p, q)
                (upper if orient(u, v, centroid[s.tile]) > 0 else lower).append(ref)
            key = lambda r: dot(r.p - u, v - u)  # noqa: E731
            out.append(MaximalSegment(u, v, tuple(sorted(upper, key=key)), tuple(sorted(lower, key=key))))
    out.sort(key=lambda m: (m.u.lex_yx(), m.v.lex_yx()))
    return out


@dataclass(frozen=True)
class HalfSegment:
    """A half maximal segment [u, v] read from u towards v."""

    u: Point
    v: Point
    upper: tuple[SideRef, ...]
    lower: tuple[SideRef, ...]
    parent: int

    @property
    def direction(self) -> Point:
        return self.v - self.u

    @property
    def upper_seq(self) -> tuple:
        return tuple(s.length for s in self.upper)

    @property
    def lower_seq(self) -> tuple:
        return tuple(s.length for s in self.lower)


def _flip(r: SideRef) -> SideRef:
    return SideRef(r.tile, r.label, r.length, r.q, r.p)


def half_segment(segs: list[MaximalSegment], w: Point, y: Point) -> HalfSegment | None:
    """The half maximal segment starting at w in direction y, if there is one."""
    for idx, m in enumerate(segs):
        d = m.direction
        if cross(d, y).sign() != 0 or orient(m.u, m.v, w) != 0:
            continue
        forward = dot(d, y).sign() > 0
        end = m.v if forward else m.u
        if w == end or dot(w - m.u, d).sign() < 0 or dot(w - m.v, d).sign() > 0:
            continue
        base = w

        def beyond(r: SideRef) -> bool | None:
            a, b = dot(r.p - base, y).sign(), dot(r.q - base, y).sign()
            if a >= 0 and b >= 0:
                return True
            if a <= 0 and b <= 0:
                return False
            return None  # straddles w

        parts = []
        for seq in (m.upper, m.lower):
            refs = [r if forward else _flip(r) for r in seq]
            kept = []
            for r in refs:
                side = beyond(r)
                if side is None:
                    return None
                if side:
                    kept.append(r)
            kept.sort(key=lambda r: dot(r.p - base, y))
            parts.append(tuple(kept))
        upper, lower = parts if forward else (parts[1], parts[0])
        return HalfSegment(w, end, upper, lower, idx)
    return None


# ---------------------------------------------------------------------------
# side-length relations


_COUNT_SLOT = {"bc": 0, "da": 1, "cd": 2, "ab": 3}


@dataclass(frozen=True)
class SideRelation:
    """a*x + b*(x + 1) + c*sqrt3 + 2*d = 0."""

    a: int
    b: int
    c: int
    d: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def _counts(refs) -> list[int]:
    out = [0, 0, 0, 0]
    for r in refs:
        out[_COUNT_SLOT[r.label]] += 1
    return out


def relation_from_sequences(upper, lower) -> SideRelation:
    cu, cl = _counts(upper), _counts(lower)
    return SideRelation(*(p - q for p, q in zip(cu, cl)))


def boundary_identified_relations(t: Tiling, segs: list[MaximalSegment] | None = None) -> list[SideRelation]:
    """One relation per interior maximal segment, plus one for each identified pair of opposite region sides."""
    if t.prototile.kind != TRAPEZOID:
        raise ValueError("relations are defined for trapezoid tilings")
    if segs is None:
        segs = extract_maximal_segments(t)
    region = t.region
    rels = []
    bottom, top, left, right = [], [], [], []
    for m in segs:
        if not m.boundary:
            rels.append(relation_from_sequences(m.upper, m.lower))
            continue
        refs = m.upper or m.lower
        if m.u[1].sign() == 0 and m.v[1].sign() == 0:
            bottom += refs
        elif m.u[1] == region.height and m.v[1] == region.height:
            top += refs
        elif m.u[0].sign() == 0 and m.v[0].sign() == 0:
            left += refs
        else:
            right += refs
    rels.append(relation_from_sequences(bottom, top))
    rels.append(relation_from_sequences(left, right))
    return rels


@dataclass(frozen=True)
class SolveResult:
    kind: str  # solved | allDegenerate | contradiction
    r: Fraction | None = None
    s: Fraction | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.r is not None:
            out["r"] = [self.r.numerator, self.r.denominator]
            out["s"] = [self.s.numerator, self.s.denominator]
        if self.detail:
            out["detail"] = self.detail
        return out


def solve_x(relations: list[SideRelation]) -> SolveResult:
    found = None
    for rel in relations:
        a, b, c, d = rel.as_tuple()
        if a + b == 0:
            if b + 2 * d != 0 or c != 0:
                return SolveResult("contradiction", detail=f"relation {rel.as_tuple()} has no solution")
            continue
        rs = (Fraction(-(b + 2 * d), a + b), Fraction(-c, a + b))
        if found is None:
            found = rs
        elif rs != found:
            return SolveResult("contradiction", detail=f"relation {rel.as_tuple()} gives {rs}, earlier {found}")
    if found is None:
        return SolveResult("allDegenerate")
    return SolveResult("solved", *found)


def sqrt3_sides_even(t: Tiling, segs: list[MaximalSegment] | None = None) -> bool:
    """Each maximal segment (opposite region sides identified) carries an even number of sqrt3 sides."""
    if segs is None:
        segs = extract_maximal_segments(t)
    total = Counter()
    for i, m in enumerate(segs):
        n = sum(1 for r in m.upper + m.lower if r.label == "cd")
        if not m.boundary:
            total[i] += n
        elif m.u[1] == m.v[1]:
            total["horizontal"] += n
        else:
            total["vertical"] += n
    return all(v % 2 == 0 for v in total.values())


@dataclass(frozen=True)
class AreaCheck:
    s_positive: bool
    A: Fraction
    B: Fraction
    rational_ok: bool
    radical_ok: bool

    @property
    def consistent(self) -> bool:
        return self.rational_ok and self.radical_ok

    def to_json(self) -> dict:
        return {
            "sPositive": self.s_positive,
            "A": [self.A.numerator, self.A.denominator],
            "B": [self.B.numerator, self.B.denominator],
            "rationalPart": self.rational_ok,
            "radicalPart": self.radical_ok,
        }


class AreaMismatchError(ValueError):
    pass


def area_constraint(n: int, x: QuadraticNumber, side: QuadraticNumber) -> AreaCheck:
    """Compare side^2 with N times the area (2x + 1)sqrt3/2 of the tile, part by part."""
    if x.d != 3 or side.d != 3:
        raise ValueError("the area constraint is stated in Q(sqrt3)")
    r, s = x.rat, x.rad
    A, B = side.rat, side.rad
    return AreaCheck(s > 0, A, B, A * A + 3 * B * B == 3 * n * s, 2 * A * B == Fraction(n * (2 * r + 1), 2))


def area_constraint_check(t: Tiling) -> AreaCheck:
    if not t.region.is_square:
        raise ValueError("the area constraint needs a square region")
    if t.prototile.kind != TRAPEZOID or t.prototile.mode != PI_3:
        raise ValueError("the area constraint is for alpha = pi/3 trapezoids")
    res = area_constraint(t.n, t.prototile.x, t.region.width)
    if not res.consistent:
        raise AreaMismatchError("region area and N tiles disagree: invalid tiling parameters")
    return res


def pure2_check(x: QuadraticNumber, bound: int) -> tuple[int, int, int, int] | None:
    """First (a, b, c, target) with a*x + b*(x+1) + c*sqrt3 a positive even integer.

    For fixed a, b the sqrt3 part pins c, so the scan is over a and b only.
    """
    r, s = x.rat, x.rad
    for a in range(bound + 1):
        for b in range(bound + 1):
            c = -(a + b) * s
            if c.denominator != 1 or not 0 <= c <= bound:
                continue
            value = (a + b) * r + b
            if value > 0 and value.denominator == 1 and value.numerator % 2 == 0:
                return (a, b, int(c), int(value))
    return None


# ---------------------------------------------------------------------------
# (beta, beta, beta) vertices and head information


@dataclass(frozen=True)
class ThreeBetaVertex:
    point: Point
    tiles: tuple[int, ...]
    uniform: bool  # all three tiles have the same orientation; otherwise one is mirrored


def find_3beta_vertices(inc: list[VertexIncidence], t: Tiling | None = None) -> list[ThreeBetaVertex]:
    out = []
    for v in inc:
        if v.angle_sum == 2 and v.pattern == ("beta", "beta", "beta"):
            uniform = True
            if t is not None:
                uniform = len({t.tiles[j].iso.reflect for j in v.tiles}) == 1
            out.append(ThreeBetaVertex(v.w, v.tiles, uniform))
    return out


@dataclass(frozen=True)
class HeadInformation:
    u: Point
    x: Point  # unit direction when it lies in the field, else v - u
    delta: str
    theta: str  # 'alpha' or 'beta'

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "x": self.x.to_json(), "delta": self.delta, "theta": self.theta}


def unit_direction(v: Point) -> Point:
    d = v[0].d
    one = v[0] * 0 + 1
    e = Point(one, one * 0)
    for k in range(rotation_order(d)):
        r = rotate(e, k, d)
        if same_direction(r, v):
            return r
    return v


def _angle_at(t: Tiling, tile: int, w: Point) -> str:
    for tv in t.tile_vertices[tile]:
        if tv.point == w:
            return tv.angle.name() if tv.angle is not None else "?"
    return "?"


def _is_two(r: SideRef) -> bool:
    return r.length is not None and r.length == 2


def head_information(t: Tiling, hs: HalfSegment) -> HeadInformation | None:
    """Head information if ``hs`` is a special segment, else None."""
    if not hs.upper or not hs.lower:
        return None
    up, lo = _is_two(hs.upper[0]), _is_two(hs.lower[0])
    if up == lo:
        return None
    first = hs.upper[0] if up else hs.lower[0]
    if first.p != hs.u:
        return None
    return HeadInformation(hs.u, unit_direction(hs.direction), UPPER if up else LOWER, _angle_at(t, first.tile, hs.u))


def is_special(hs: HalfSegment) -> bool:
    if not hs.upper or not hs.lower:
        return False
    return _is_two(hs.upper[0]) != _is_two(hs.lower[0])


def _points_on(m: MaximalSegment) -> list[Point]:
    pts = {m.u, m.v}
    for r in m.upper + m.lower:
        pts.add(r.p)
        pts.add(r.q)
    return sorted(pts, key=lambda p: dot(p - m.u, m.v - m.u))


def _require_pi3(t: Tiling) -> None:
    if t.prototile.kind != TRAPEZOID or t.prototile.mode != PI_3:
        raise ValueError("special segments are defined for alpha = pi/3 trapezoid tilings")


def scan_special_segments(
    t: Tiling, segs: list[MaximalSegment] | None = None
) -> list[tuple[HalfSegment, HeadInformation]]:
    _require_pi3(t)
    if segs is None:
        segs = extract_maximal_segments(t)
    out = []
    for m in segs:
        if m.boundary:
            continue
        for w in _points_on(m):
            for y in (m.direction, Point(-m.direction[0], -m.direction[1])):
                hs = half_segment(segs, w, y)
                if hs is None:
                    continue
                head = head_information(t, hs)
                if head is not None:
                    out.append((hs, head))
    return out


# ---------------------------------------------------------------------------
# the precedence order and chains


def _omega(v: Point, power: int = 1) -> Point:
    """Multiply by exp(2 pi i / 3) ``power`` times."""
    d = v[0].d
    return rotate(v, (rotation_order(d) // 3) * power, d)


def prec(u: Point, v: Point, x: Point) -> bool:
    """u < v: v - u = a*x + b*omega^2*x with a, b >= 0 and (a, b) != (0, 0)."""
    e1, e2 = x, _omega(x, 2)
    w = v - u
    det = cross(e1, e2)
    a = cross(w, e2) / det
    b = cross(e1, w) / det
    return a.sign() >= 0 and b.sign() >= 0 and (a.sign() > 0 or b.sign() > 0)


def chain_frame(head: HeadInformation) -> Point:
    """Reference direction in which a chain started at ``head`` increases."""
    return _omega(head.x) if head.delta == UPPER else head.x


@dataclass(frozen=True)
class ChainStep:
    kind: str  # next | contradiction | terminated
    head: HeadInformation | None = None
    case: str = ""
    witness_tiles: tuple[int, ...] = ()
    reason: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "case": self.case, "witnessTiles": list(self.witness_tiles)}
        if self.head is not None:
            out["head"] = self.head.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def _other_side_direction(t: Tiling, tile: int, w: Point, along: Point) -> tuple[Point, str] | None:
    """Direction of the tile's second side at its vertex w (the first runs along ``along``)."""
    verts = t.tile_vertices[tile]
    n = len(verts)
    for i, tv in enumerate(verts):
        if tv.point != w:
            continue
        for nb in (verts[i - 1], verts[(i + 1) % n]):
            vec = nb.point - w
            if not same_direction(vec, along):
                pair = {tv.label, nb.label}
                label = next((s for s in ("ab", "bc", "cd", "da") if set(s) == pair), "")
                return vec, label
    return None


def chain_step(t: Tiling, head: HeadInformation, segs: list[MaximalSegment] | None = None) -> ChainStep:
    """One step of the special-segment chain.

    Follows the side sequence of the head's part up to the first side that
    is not the length-2 side; its start u1 is the turning point.  From there
    the successor runs along the second side of the tile T(h) at u1.
    """
    if segs is None:
        segs = extract_maximal_segments(t)
    hs = half_segment(segs, head.u, head.x)
    if hs is None:
        return ChainStep("terminated", reason="head is not on a half maximal segment")
    seq = hs.upper if head.delta == UPPER else hs.lower
    h = next((i for i, r in enumerate(seq) if not _is_two(r)), None)
    if h is None:
        return ChainStep("terminated", reason="side sequence consists of length-2 sides only")
    if h == 0:
        return ChainStep("terminated", reason="head does not start with a length-2 side")
    u1 = seq[h].p
    prev_tile, cur_tile = seq[h - 1].tile, seq[h].tile
    prev_angle, cur_angle = _angle_at(t, prev_tile, u1), _angle_at(t, cur_tile, u1)
    witness = (prev_tile, cur_tile)

    if head.theta == "beta" and prev_angle == "beta":
        return ChainStep("contradiction", case="turning point", witness_tiles=witness,
                         reason="T(h-1) and T(h) both meet u1 with the pattern of a forbidden pair")
    if cur_angle not in ("alpha", "beta"):
        return ChainStep("terminated", witness_tiles=witness, reason=f"T(h) has angle {cur_angle} at u1")
    turn = _other_side_direction(t, cur_tile, u1, head.x)
    if turn is None:
        return ChainStep("terminated", witness_tiles=witness, reason="T(h) has no second side at u1")
    y, _ = turn
    nxt = half_segment(segs, u1, y)
    if nxt is None:
        return ChainStep("terminated", witness_tiles=witness, reason="no half maximal segment leaves u1")
    new_head = head_information(t, nxt)

    if head.theta == "alpha":
        if new_head is not None and new_head.theta == "alpha":
            return ChainStep("next", new_head, "alpha head", witness)
        return ChainStep("terminated", witness_tiles=witness, reason="no alpha head at u1")

    if cur_angle == "beta":
        # a_h = x: T(h) turns the segment at its beta corner
        if new_head is None:
            return ChainStep("terminated", case="case 1", witness_tiles=witness, reason="segment at u1 not special")
        if new_head.theta == "alpha":
            return ChainStep("contradiction", new_head, "case 1", witness, "alpha head at u1")
        return ChainStep("next", new_head, "case 1", witness)

    # a_h = x + 1: T(h) meets u1 with alpha and its hypotenuse leaves u1
    if new_head is not None:
        wit = witness + (nxt.upper[0].tile, nxt.lower[0].tile)
        if new_head.theta == "alpha":
            return ChainStep("contradiction", new_head, "case 2", wit, "alpha head at u1")
        return ChainStep("terminated", case="case 2", witness_tiles=wit, reason="unexpected beta head at u1")
    p = 0
    while p < min(len(nxt.upper), len(nxt.lower)) and _is_two(nxt.upper[p]) and _is_two(nxt.lower[p]):
        p += 1
    if p == 0:
        return ChainStep("terminated", case="case 2", witness_tiles=witness, reason="segment at u1 has no length-2 start")
    u2 = nxt.upper[p - 1].q
    cands = []
    for m_idx, m in enumerate(segs):
        if orient(m.u, m.v, u2) != 0 or cross(m.direction, y).sign() == 0:
            continue
        for dirn in (m.direction, Point(-m.direction[0], -m.direction[1])):
            hs2 = half_segment(segs, u2, dirn)
            if hs2 is None:
                continue
            hd = head_information(t, hs2)
            if hd is not None:
                cands.append(hd)
    case = "case 2.2" if p == len(nxt.upper) == len(nxt.lower) else "case 2.1"
    alpha_heads = [c for c in cands if c.theta == "alpha"]
    if alpha_heads:
        return ChainStep("contradiction", alpha_heads[0], case, witness, "alpha head at u2")
    beta_heads = [c for c in cands if c.theta == "beta"]
    if beta_heads and case == "case 2.2":
        return ChainStep("next", beta_heads[0], case, witness)
    return ChainStep("terminated", case=case, witness_tiles=witness, reason="no admissible head at u2")


@dataclass(frozen=True)
class ChainReport:
    status: str  # unreachable | contradiction | terminated | exhausted
    start: ThreeBetaVertex | None
    heads: tuple[HeadInformation, ...]
    steps: tuple[ChainStep, ...]
    monotone: bool

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "start": None if self.start is None else self.start.point.to_json(),
            "heads": [h.to_json() for h in self.heads],
            "steps": [s.to_json() for s in self.steps],
            "monotone": self.monotone,
        }


def _start_heads(t: Tiling, segs, v: Point) -> list[HeadInformation]:
    heads = []
    for m in segs:
        if orient(m.u, m.v, v) != 0 or dot(v - m.u, v - m.v).sign() > 0:
            continue
        for dirn in (m.direction, Point(-m.direction[0], -m.direction[1])):
            hs = half_segment(segs, v, dirn)
            if hs is not None:
                hd = head_information(t, hs)
                if hd is not None and hd.theta == "beta":
                    heads.append(hd)
    return heads


def odd_n_obstruction_report(t: Tiling, max_steps: int | None = None) -> ChainReport:
    """Follow special segments from a (beta, beta, beta) vertex until something breaks."""
    from .hgraph import angle_pattern_check, build_hgraph

    _require_pi3(t)
    inc = build_incidence(t, strict=False)
    g = build_hgraph(t, check=False)
    if angle_pattern_check(t, g, inc).eulerian:
        return ChainReport("unreachable", None, (), (), True)
    starts = find_3beta_vertices(inc, t)
    if not starts:
        return ChainReport("terminated", None, (), (), True)
    segs = extract_maximal_segments(t)
    limit = max_steps if max_steps is not None else 4 * len(inc) + 4
    first = None
    for start in starts:
        for head in _start_heads(t, segs, start.point):
            rep = _follow(t, segs, start, head, limit)
            if rep.status == "contradiction":
                return rep
            if first is None:
                first = rep
    return first if first is not None else ChainReport("terminated", starts[0], (), (), True)


def _follow(t: Tiling, segs, start: ThreeBetaVertex, head: HeadInformation, limit: int) -> ChainReport:
    frame = chain_frame(head)
    chain, steps, monotone = [head], [], True
    for _ in range(limit):
        step = chain_step(t, head, segs)
        steps.append(step)
        if step.kind != "next":
            return ChainReport(step.kind, start, tuple(chain), tuple(steps), monotone)
        if not prec(head.u, step.head.u, frame):
            monotone = False
        head = step.head
        chain.append(head)
    return ChainReport("exhausted", start, tuple(chain), tuple(steps), monotone)


def segments_report(t: Tiling) -> dict:
    segs = extract_maximal_segments(t)
    out: dict = {"maximalSegments": [m.to_json() for m in segs]}
    if t.prototile.kind != TRAPEZOID:
        return out
    rels = boundary_identified_relations(t, segs)
    solved = solve_x(rels)
    out["relations"] = [list(r.as_tuple()) for r in rels]
    out["solveX"] = solved.to_json()
    if solved.kind == "allDegenerate":
        out["sqrt3SidesEven"] = sqrt3_sides_even(t, segs)
    if t.prototile.mode == PI_3:
        if t.region.is_square:
            try:
                out["areaConstraint"] = area_constraint_check(t).to_json()
            except AreaMismatchError as exc:
                out["areaConstraint"] = {"error": str(exc)}
        special = scan_special_segments(t, segs)
        out["specialSegments"] = [h.to_json() for _, h in special]
        out["alphaHeads"] = sum(1 for _, h in special if h.theta == "alpha")
        out["chain"] = odd_n_obstruction_report(t).to_json()
    return out
