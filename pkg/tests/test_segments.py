from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dissect import families
from dissect.exactnum import QuadraticNumber, qn
from dissect.families import mirrored, place_trapezoid, square_symmetries
from dissect.geometry import Point
from dissect.incidence import build_incidence
from dissect.segments import (
    AreaMismatchError,
    SideRef,
    area_constraint,
    area_constraint_check,
    boundary_identified_relations,
    chain_step,
    extract_maximal_segments,
    find_3beta_vertices,
    half_segment,
    head_information,
    is_special,
    odd_n_obstruction_report,
    prec,
    pure2_check,
    relation_from_sequences,
    scan_special_segments,
    solve_x,
    SideRelation,
    sqrt3_sides_even,
)
from dissect.tiling import Region, Tiling

from conftest import X_PAIR

O = Point(qn(0), qn(0))


def P(x, y):
    def c(v):
        return v if isinstance(v, QuadraticNumber) else qn(v)

    return Point(c(x), c(y))


def ref(label):
    return SideRef(0, label, None, O, O)


# --- maximal segments -----------------------------------------------------------


@pytest.mark.parametrize(
    "tiling,count",
    [(families.pair_tiling, 5), (lambda: families.grid(2, 2), 6), (families.single_square, 4)],
)
def test_segment_counts(tiling, count):
    assert len(extract_maximal_segments(tiling())) == count


def test_pair_hypotenuse_segment(pair):
    inner = [m for m in extract_maximal_segments(pair) if not m.boundary]
    assert len(inner) == 1
    (m,) = inner
    assert m.upper_seq == (qn(2),) and m.lower_seq == (qn(2),)
    assert {r.label for r in m.upper + m.lower} == {"ab"}


def _all_tilings():
    return [families.grid(2, 3)] + families.brick_patterns() + families.trapezoid_family()


def test_sides_partitioned_and_balanced():
    for t in _all_tilings():
        segs = extract_maximal_segments(t)
        seen = [(r.tile, frozenset((r.p, r.q))) for m in segs for r in m.upper + m.lower]
        assert len(seen) == len(set(seen)) == t.n * t.q
        for m in segs:
            if not m.boundary:
                zero = qn(0, 0, t.d)
                assert sum(m.upper_seq, zero) == sum(m.lower_seq, zero)


# --- relations ------------------------------------------------------------------


def test_relation_examples(pair):
    rels = boundary_identified_relations(pair)
    assert all(r.as_tuple() == (0, 0, 0, 0) for r in rels)
    r = relation_from_sequences([ref("bc"), ref("da")], [ref("ab"), ref("cd")])
    assert r.as_tuple() == (1, 1, -1, -1)


def test_solve_x_examples():
    res = solve_x([SideRelation(1, 1, -1, -1)])
    assert res.kind == "solved" and (res.r, res.s) == (Fraction(1, 2), Fraction(1, 2))
    assert solve_x([SideRelation(0, 0, 0, 0)]).kind == "allDegenerate"
    assert solve_x([SideRelation(1, 1, -1, -1), SideRelation(1, 0, 0, -1)]).kind == "contradiction"
    assert solve_x([SideRelation(1, -1, 0, 0)]).kind == "contradiction"


def test_solve_x_recovers_parameter():
    t = families.mixed_pairs_16()
    res = solve_x(boundary_identified_relations(t))
    x = t.prototile.x
    assert res.kind == "solved" and (res.r, res.s) == (x.rat, x.rad)


def test_pure_pair_stacks_are_degenerate():
    for t in (families.pair_tiling(), families.stacked_pairs(2)):
        assert solve_x(boundary_identified_relations(t)).kind == "allDegenerate"
        assert sqrt3_sides_even(t)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 7))
def test_solve_x_under_symmetry(k):
    t = families.mixed_pairs_16()
    image = mirrored(t, square_symmetries(t.region)[k])
    res = solve_x(boundary_identified_relations(image))
    assert (res.r, res.s) == (t.prototile.x.rat, t.prototile.x.rad)


# --- area -----------------------------------------------------------------------


def test_area_examples(pair):
    chk = area_constraint_check(pair)
    assert chk.s_positive and chk.consistent and (chk.A, chk.B) == (0, 1)
    odd = area_constraint(3, qn(0, Fraction(1, 3)), qn(Fraction(3, 2), Fraction(1, 2)))
    assert odd.consistent and odd.s_positive
    flat = area_constraint(2, qn(1), qn(0, 1))
    assert not flat.s_positive


def test_area_mismatch(pair):
    bad = Tiling.from_isometries(pair.prototile, Region(qn(0, 1), qn(0, 1)), [pair.tiles[0].iso] * 3)
    with pytest.raises(AreaMismatchError):
        area_constraint_check(bad)


fracs = st.fractions(min_value=-3, max_value=3, max_denominator=6)


@given(
    st.fractions(min_value=0, max_value=3, max_denominator=6).filter(lambda v: v > 0),
    st.fractions(min_value=0, max_value=3, max_denominator=6),
    st.integers(1, 12),
)
def test_area_constraint_consistent_when_side_exists(a, b, n):
    # choose the square side A + B sqrt3 and read off the x that makes n tiles fit
    side = qn(a, b)
    s = (a * a + 3 * b * b) / (3 * n)
    r = (4 * a * b / n - 1) / 2
    chk = area_constraint(n, qn(r, s), side)
    assert chk.consistent and chk.s_positive
    assert area_constraint(n + 1, qn(r, s), side).rational_ok is False


# --- pure-2 ---------------------------------------------------------------------


def test_pure2_examples():
    assert pure2_check(X_PAIR, 100) is None
    assert pure2_check(qn(1), 10) == (0, 1, 0, 2)
    assert pure2_check(qn(Fraction(1, 2), Fraction(1, 2)), 100) is None


@given(fracs, st.fractions(min_value=0, max_value=3, max_denominator=6).filter(lambda s: s > 0))
def test_pure2_never_with_positive_s(r, s):
    assert pure2_check(qn(r, s), 20) is None


# --- special segments and chains --------------------------------------------------


def test_no_special_segments_on_valid_tilings():
    for t in families.trapezoid_family()[:4]:
        assert all(h.theta != "alpha" for _, h in scan_special_segments(t))
    assert scan_special_segments(families.pair_tiling()) == []


def test_three_beta_vertices_absent_on_valid_tilings():
    for t in families.trapezoid_family():
        assert find_3beta_vertices(build_incidence(t), t) == []


def _fan():
    """Three tiles meeting with beta at a point, two mirrored tiles beyond."""
    proto = families.trapezoid(X_PAIR)
    s3, o = qn(0, 1), qn(10)

    def Q(a, b):
        return P(qn(a) + o if not isinstance(a, QuadraticNumber) else a + o,
                 qn(b) + o if not isinstance(b, QuadraticNumber) else b + o)

    c = Q(0, 0)
    isos = [
        place_trapezoid(proto, Q(2, 0), c, True),
        place_trapezoid(proto, Q(-1, s3), c, True),
        place_trapezoid(proto, Q(-1, -s3), c, True),
        place_trapezoid(proto, Q(1, s3), Q(2, 0), False),
        place_trapezoid(proto, Q(1, s3), Q(3, s3), False),
        place_trapezoid(proto, Q(1, s3), Q(2, s3 * 2), False),
    ]
    return Tiling.from_isometries(proto, Region(qn(20), qn(20)), isos), c, Q


def test_three_beta_fan_detected():
    t, c, _ = _fan()
    found = find_3beta_vertices(build_incidence(t, strict=False), t)
    assert [v.point for v in found] == [c]


def test_chain_on_fan():
    t, c, Q = _fan()
    segs = extract_maximal_segments(t)
    hs = half_segment(segs, c, P(1, 0))
    assert is_special(hs)
    head = head_information(t, hs)
    assert (head.delta, head.theta) == ("upper", "beta")
    step = chain_step(t, head, segs)
    assert step.kind == "next" and step.case == "case 1"
    # turning point (c + 2, turned by omega), lower, beta
    assert step.head.u == Q(2, 0)
    assert step.head.x == P(Fraction(-1, 2), qn(0, Fraction(1, 2)))
    assert (step.head.delta, step.head.theta) == ("lower", "beta")
    nxt = chain_step(t, step.head, segs)
    assert nxt.kind == "contradiction"


def test_obstruction_report_on_fan():
    t, c, _ = _fan()
    rep = odd_n_obstruction_report(t)
    assert rep.status == "contradiction" and rep.start.point == c
    assert len(rep.steps) >= 1 and rep.monotone


def test_obstruction_unreachable_on_valid(pair):
    assert odd_n_obstruction_report(pair).status == "unreachable"


# --- precedence -------------------------------------------------------------------


def test_prec_examples():
    x = P(1, 0)
    assert prec(O, P(2, 0), x)
    assert not prec(O, O, x)
    assert not prec(O, P(-1, 0), x)


pts = st.builds(lambda a, b, c, d: P(qn(a, b), qn(c, d)), *[st.integers(-4, 4)] * 4)


@given(pts, pts, pts)
def test_prec_is_strict_partial_order(u, v, w):
    x = P(1, 0)
    assert not (prec(u, v, x) and prec(v, u, x))
    if prec(u, v, x) and prec(v, w, x):
        assert prec(u, w, x)
