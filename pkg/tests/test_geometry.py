from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dissect.exactnum import QuadraticNumber, qn
from dissect.families import trapezoid
from dissect.geometry import (
    GeometryError,
    Isometry,
    Point,
    Prototile,
    Segment,
    apply_isometry,
    ccw_key,
    clip_convex,
    convex_difference,
    convex_intersection_area,
    direction_equiv,
    placed_polygon,
    point_in_convex,
    polygon_area,
    rotate,
    rotation_entries,
    rotation_order,
    segment_relation,
)
from dissect.hgraph import tile_positive
from dissect.tiling import Region, Tiling

from conftest import X_PAIR


def P(x, y, d=3):
    def c(v):
        return v if isinstance(v, QuadraticNumber) else qn(v, 0, d)

    return Point(c(x), c(y))


def square(x0, y0, s):
    return [P(x0, y0), P(x0 + s, y0), P(x0 + s, y0 + s), P(x0, y0 + s)]


def test_apply_isometry_examples():
    z = qn(0)
    quarter = Isometry(3, False, z, z)
    assert apply_isometry(quarter, P(1, 0)) == P(0, 1)
    assert apply_isometry(Isometry.identity(3), P(5, 7)) == P(5, 7)
    iso = Isometry(0, True, z, qn(0, 1))
    assert apply_isometry(iso, P(X_PAIR, 0)) == P(X_PAIR, qn(0, 1))


def test_polygon_area_examples():
    assert polygon_area(square(0, 0, 1)) == qn(1)
    assert polygon_area(trapezoid(X_PAIR).vertices) == qn(Fraction(3, 2))


@pytest.mark.parametrize("r,s", [(0, 1), (Fraction(1, 2), Fraction(1, 3)), (-Fraction(1, 2), 1), (2, 0)])
def test_trapezoid_area_formula(r, s):
    x = qn(r, s)
    expected = qn(0, Fraction(2 * r + 1, 2)) + 3 * s
    assert polygon_area(trapezoid(x).vertices) == expected


def test_degenerate_polygons():
    with pytest.raises(GeometryError):
        polygon_area([P(0, 0), P(1, 0), P(2, 0)])
    with pytest.raises(GeometryError):
        polygon_area([P(0, 0), P(1, 1), P(1, 0), P(0, 1)])
    with pytest.raises(GeometryError):
        Prototile.convex_polygon([P(0, 0), P(1, 0), P(2, 0), P(0, 1)])


def test_segment_relation_examples():
    assert segment_relation(Segment(P(0, 0), P(1, 0)), Segment(P(0, 1), P(1, 1))) == ("disjoint",)
    kind, seg = segment_relation(Segment(P(0, 0), P(2, 0)), Segment(P(1, 0), P(3, 0)))
    assert kind == "overlap" and {seg.p, seg.q} == {P(1, 0), P(2, 0)}
    assert segment_relation(Segment(P(0, 0), P(1, 1)), Segment(P(1, 0), P(0, 1))) == (
        "point",
        P(Fraction(1, 2), Fraction(1, 2)),
    )


def test_direction_equiv_examples():
    assert direction_equiv(P(1, 0), P(0, -1))
    assert not direction_equiv(P(1, 0), P(1, 1))
    assert direction_equiv(P(1, qn(0, 1)), P(qn(0, -1), 1))


def test_tile_orientation():
    proto = trapezoid(X_PAIR)
    z = qn(0)
    region = Region(qn(10), qn(10))
    isos = [Isometry(0, False, z, z), Isometry(0, True, z, z), Isometry(3, False, z, z)]
    t = Tiling.from_isometries(proto, region, isos)
    assert [tile_positive(t, j) for j in range(3)] == [True, False, True]


@pytest.mark.parametrize("d", [2, 3])
def test_rotation_table(d):
    n = rotation_order(d)
    for k in range(n):
        c, s = rotation_entries(k, d)
        assert c * c + s * s == qn(1, 0, d)
    v = P(1, 0, d)
    for k in range(n):
        v = rotate(v, 1, d)
    assert v == P(1, 0, d)


isos3 = st.builds(
    Isometry,
    st.integers(0, 11),
    st.booleans(),
    st.fractions(-5, 5, max_denominator=4).map(lambda r: qn(r)),
    st.fractions(-5, 5, max_denominator=4).map(lambda r: qn(0, r)),
)
pts3 = st.builds(
    lambda a, b, c, e: Point(qn(a, b), qn(c, e)),
    *[st.fractions(-5, 5, max_denominator=4)] * 4,
)


@given(isos3, isos3, pts3)
def test_compose_is_function_composition(f, g, p):
    assert f.compose(g)(p) == f(g(p))


@given(isos3, pts3, pts3)
def test_isometries_preserve_distance(f, p, q):
    u, v = p - q, f(p) - f(q)
    assert u[0] ** 2 + u[1] ** 2 == v[0] ** 2 + v[1] ** 2


@given(isos3)
def test_placed_polygon_keeps_area_and_orientation(f):
    proto = trapezoid(X_PAIR)
    poly = placed_polygon(proto, f)
    assert polygon_area(poly) == proto.area()


coord = st.integers(0, 8)


@st.composite
def rects(draw):
    x0, y0 = draw(coord), draw(coord)
    w, h = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    return [P(x0, y0), P(x0 + w, y0), P(x0 + w, y0 + h), P(x0, y0 + h)]


@st.composite
def triangles(draw):
    x0, y0 = draw(coord), draw(coord)
    w, h = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    k = draw(st.integers(-3, 8))
    return [P(x0, y0), P(x0 + w, y0), P(x0 + k, y0 + h)]


convex = st.one_of(rects(), triangles())


@given(convex, convex)
def test_intersection_area_symmetric_and_bounded(a, b):
    ab = convex_intersection_area(a, b)
    assert ab == convex_intersection_area(b, a)
    assert ab.sign() >= 0
    assert ab <= polygon_area(a) and ab <= polygon_area(b)
    assert convex_intersection_area(a, a) == polygon_area(a)


@given(convex, convex)
def test_difference_partitions_subject(a, b):
    pieces = convex_difference(a, b)
    total = sum((polygon_area(p) for p in pieces), qn(0))
    assert total == polygon_area(a) - convex_intersection_area(a, b)
    for p in pieces:
        assert convex_intersection_area(p, b).sign() == 0
        assert convex_intersection_area(p, a) == polygon_area(p)


@given(convex, convex)
def test_clip_is_inside_both(a, b):
    c = clip_convex(a, b)
    for p in c:
        assert point_in_convex(p, a, strict=False) and point_in_convex(p, b, strict=False)


def test_ccw_key_order():
    dirs = [P(1, 0), P(1, 1), P(0, 1), P(-1, 1), P(-1, 0), P(-1, -1), P(0, -1), P(1, -1)]
    assert sorted(reversed(dirs), key=ccw_key) == dirs
