"""Constructors for concrete tilings used as fixtures and experiment inputs."""
from __future__ import annotations

from fractions import Fraction

from .exactnum import AngleMode, QuadraticNumber, qn
from .geometry import Isometry, Point, Prototile, rotation_order, trig_of_alpha
from .tiling import Region, Tiling

PI_3 = AngleMode.bound(1, 3)
PI_4 = AngleMode.bound(1, 4)


def _iso(rot: int, reflect: bool, dx, dy, d: int) -> Isometry:
    return Isometry(rot, reflect, QuadraticNumber(0, 0, d) + dx, QuadraticNumber(0, 0, d) + dy)


def grid(m: int, n: int, d: int = 3) -> Tiling:
    """m x n grid of unit squares in an m x n region."""
    one = qn(1, 0, d)
    proto = Prototile.rectangle(one, one)
    isos = [_iso(0, False, i, j, d) for j in range(n) for i in range(m)]
    return Tiling.from_isometries(proto, Region(one * m, one * n), isos)


def single_square(d: int = 3) -> Tiling:
    return grid(1, 1, d)


def brick_rows(rows: list[list[tuple[int, int, bool]]], width: int, height: int, d: int = 3) -> Tiling:
    """1 x 2 bricks given as (x, y, vertical) lower-left placements."""
    one = qn(1, 0, d)
    proto = Prototile.rectangle(one * 2, one)
    quarter = rotation_order(d) // 4
    isos = []
    for row in rows:
        for x, y, vertical in row:
            if vertical:
                # rotate by pi/2: [0,2]x[0,1] -> [-1,0]x[0,2]
                isos.append(_iso(quarter, False, x + 1, y, d))
            else:
                isos.append(_iso(0, False, x, y, d))
    return Tiling.from_isometries(proto, Region(one * width, one * height), isos)


def brick_patterns(d: int = 3) -> list[Tiling]:
    """A few brick layouts, several with T-junctions."""
    return [
        brick_rows([[(0, 0, False)]], 2, 1, d),
        brick_rows([[(0, 0, False)], [(0, 1, False)]], 2, 2, d),
        brick_rows([[(0, 0, True), (1, 0, True)]], 2, 2, d),
        brick_rows([[(0, 0, True), (1, 0, False), (1, 1, False)]], 3, 2, d),
        brick_rows(
            [[(0, 0, False), (2, 0, False)], [(0, 1, True), (1, 1, False), (3, 1, True)], [(1, 2, False)]], 4, 3, d
        ),
        brick_rows(
            [[(0, 0, False), (2, 0, True)], [(0, 1, True), (1, 1, True)], [(3, 0, True), (3, 2, True)], [(0, 3, False), (2, 2, True)]],
            4, 4, d,
        ),
    ]


def dominoes_by_rows(width: int, height: int, d: int = 3) -> Tiling:
    rows = [[(x, y, False) for x in range(0, width, 2)] for y in range(height)]
    return brick_rows(rows, width, height, d)


# ---------------------------------------------------------------------------
# right-angle trapezoids


def trapezoid(x: QuadraticNumber, mode: AngleMode = PI_3) -> Prototile:
    return Prototile.right_trapezoid(x, mode)


def pair_size(proto: Prototile) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Width and height of the rectangle formed by two tiles glued along the hypotenuse."""
    cos_a, sin_a, _ = trig_of_alpha(proto.mode, proto.d)
    return proto.x * 2 + cos_a * 2, sin_a * 2


def pair_isometries(proto: Prototile, X=0, Y=0, vertical: bool = False, mirror: bool = False) -> list[Isometry]:
    """The two tiles of a hypotenuse-glued pair filling a rectangle with lower-left corner (X, Y).

    ``vertical`` turns the pair rectangle by pi/2; ``mirror`` reflects it
    across its vertical axis (both tiles then change orientation).
    """
    d = proto.d
    n = rotation_order(d)
    w, h = pair_size(proto)
    first = Isometry.identity(d)
    second = _iso(n // 2, False, w, h, d)  # point reflection through the centre
    tiles = [first, second]
    if mirror:
        flip = _iso(n // 2, True, w, 0, d)
        tiles = [flip.compose(t) for t in tiles]
    if vertical:
        place = _iso(n // 4, False, h + X, Y, d)
    else:
        place = _iso(0, False, X, Y, d)
    return [place.compose(t) for t in tiles]


def pair_tiling(x: QuadraticNumber | None = None, mode: AngleMode = PI_3) -> Tiling:
    """N = 2: the pair filling a square; x defaults to (sqrt3 - 1)/2 for alpha = pi/3."""
    if x is None:
        if mode != PI_3:
            raise ValueError("no default x for this alpha")
        x = qn(Fraction(-1, 2), Fraction(1, 2), 3)
    proto = trapezoid(x, mode)
    w, h = pair_size(proto)
    if w != h:
        raise ValueError("pair rectangle is not a square for this x")
    return Tiling.from_isometries(proto, Region(w, h), pair_isometries(proto))


def stacked_pairs(k: int, mirror_every_other: bool = False) -> Tiling:
    """2k tiles: k pair rectangles stacked in the square of side k*sqrt3 (alpha = pi/3)."""
    x = qn(Fraction(-1, 2), Fraction(k, 2), 3)
    proto = trapezoid(x, PI_3)
    w, h = pair_size(proto)
    isos = []
    for i in range(k):
        isos += pair_isometries(proto, 0, h * i, mirror=mirror_every_other and i % 2 == 1)
    return Tiling.from_isometries(proto, Region(w, w), isos)


def two_pairs_apart() -> Tiling:
    """Two pairs stacked in a 2sqrt3 square; the hypotenuse graph has two components."""
    return stacked_pairs(2)


def mixed_pairs_16() -> Tiling:
    """16 tiles in the 4sqrt3 square: horizontal pair rectangles (2sqrt3 x sqrt3) fill
    the lower half and vertical ones the upper half.

    The middle line carries x, x + 1 twice below and four sqrt3 sides above,
    so the side-length relation there recovers x.
    """
    x = qn(Fraction(-1, 2), 1, 3)
    proto = trapezoid(x, PI_3)
    w, h = pair_size(proto)  # w = 2h
    isos = []
    for row in range(2):
        for col in range(2):
            isos += pair_isometries(proto, w * col, h * row, mirror=(row + col) % 2 == 1)
    for col in range(4):
        isos += pair_isometries(proto, h * col, w, vertical=True, mirror=col == 2)
    return Tiling.from_isometries(proto, Region(w * 2, w * 2), isos)


def pi4_stacked_pairs() -> Tiling:
    """alpha = pi/4, x = sqrt2/2: two pairs stacked in the 2sqrt2 square (N = 4)."""
    x = qn(0, Fraction(1, 2), 2)
    proto = trapezoid(x, PI_4)
    w, h = pair_size(proto)
    isos = pair_isometries(proto) + pair_isometries(proto, 0, h)
    return Tiling.from_isometries(proto, Region(w, w), isos)


def trapezoid_family() -> list[Tiling]:
    return [
        pair_tiling(),
        stacked_pairs(2),
        stacked_pairs(3, mirror_every_other=True),
        mixed_pairs_16(),
        pi4_stacked_pairs(),
    ]


def mirrored(t: Tiling, sym: Isometry) -> Tiling:
    return t.with_tiles([sym.compose(tile.iso) for tile in t.tiles])


def square_symmetries(region: Region) -> list[Isometry]:
    """Symmetries of the region rectangle: 8 for a square, 4 otherwise."""
    d = region.d
    n = rotation_order(d)
    w, h = region.width, region.height
    z = w * 0
    out = [
        Isometry(0, False, z, z),
        Isometry(n // 2, False, w, h),  # rotation by pi
        Isometry(0, True, z, h),  # y -> h - y
        Isometry(n // 2, True, w, z),  # x -> w - x
    ]
    if region.is_square:
        out += [
            Isometry(n // 4, False, w, z),  # (x, y) -> (w - y, x)
            Isometry(3 * n // 4, False, z, w),  # (x, y) -> (y, w - x)
            Isometry(n // 4, True, z, z),  # (x, y) -> (y, x)
            Isometry(3 * n // 4, True, w, w),  # (x, y) -> (w - y, w - x)
        ]
    return out


def point(x, y, d: int = 3) -> Point:
    return Point(QuadraticNumber(0, 0, d) + x, QuadraticNumber(0, 0, d) + y)


def place_trapezoid(proto: Prototile, a: Point, b: Point, positive: bool) -> Isometry:
    """The isometry putting the prototile's a and b at the given points.

    ``positive`` keeps a, b, c, d clockwise (no reflection).
    """
    d = proto.d
    src = proto.labeled("b") - proto.labeled("a")
    for rot in range(rotation_order(d)):
        lin = Isometry(rot, not positive, QuadraticNumber(0, 0, d), QuadraticNumber(0, 0, d))
        if lin.linear(src) == b - a:
            t = a - lin.linear(proto.labeled("a"))
            return Isometry(rot, not positive, t[0], t[1])
    raise ValueError("hypotenuse endpoints do not match the prototile")
