from dataclasses import replace
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from dissect import families
from dissect.exactnum import AngleMode
from dissect.geometry import Prototile
from dissect.incidence import (
    CountingSummary,
    IncidenceError,
    build_incidence,
    check_linear_identity,
    check_ratio_identity,
    counting_summary,
    linear_lhs,
    six_gon_obstruction,
    unbalanced_forced_alphas,
    v_decomposition_classify,
)
from dissect.exactnum import qn
from dissect.search import SearchConfig, enumerate_tilings
from dissect.tiling import Region


def summary(t):
    return counting_summary(build_incidence(t), t.q, t.n)


@lru_cache(maxsize=None)
def domino_tilings():
    cfg = SearchConfig(Prototile.rectangle(qn(2), qn(1)), Region(qn(4), qn(4)), 8, dedup_symmetry=False)
    return tuple(enumerate_tilings(cfg).tilings)


def test_grid_center_and_midpoints(grid2):
    inc = {v.w.to_float(): v for v in build_incidence(grid2)}
    center = inc[(1.0, 1.0)]
    assert center.vertex_class == "interior" and len(center) == 4
    assert center.pattern == ("pi/2",) * 4
    mid = inc[(1.0, 0.0)]
    assert mid.vertex_class == "boundary" and len(mid) == 2


def test_pair_corners_are_corners(pair):
    inc = build_incidence(pair)
    corners = [v for v in inc if pair.region.is_corner(v.w)]
    assert len(corners) == 4
    assert all(v.vertex_class == "corner" for v in corners)


def test_grid_census(grid2):
    s = summary(grid2)
    assert (s.cardF, s.cardH, s.F, s.H, s.hbar, s.Delta) == (1, 4, 4, 8, 4, 1)


def test_single_square_census():
    s = summary(families.single_square())
    assert (s.cardF, s.cardH, s.F, s.H, s.hbar, s.Delta) == (0, 0, 0, 0, 4, 0)


def test_pair_census(pair):
    # two corners carry one tile each; the hypotenuse ends carry two tiles and sum to pi
    s = summary(pair)
    assert (s.cardF, s.cardH, s.F, s.H, s.hbar, s.Delta) == (0, 2, 0, 4, 4, 0)


def test_ratio_identity_examples(grid2):
    s = summary(grid2)
    assert check_ratio_identity(s)
    assert check_ratio_identity(summary(families.single_square()))
    assert not check_ratio_identity(replace(s, cardF=s.cardF + 1))


def test_linear_identity_examples(grid2):
    v = check_linear_identity(summary(grid2))
    assert v.holds and v.lhs == 8
    assert check_linear_identity(summary(families.single_square())).holds
    hexagon = CountingSummary(6, 1, 0, 0, 0, 0, 6, 0)
    v = check_linear_identity(hexagon)
    assert not v.holds and v.lhs == 12


@pytest.mark.parametrize("q,expected", [(6, 12), (7, 14), (100, 200)])
def test_six_gon_obstruction(q, expected):
    assert six_gon_obstruction(q) == expected


def test_six_gon_needs_q6():
    with pytest.raises(ValueError):
        six_gon_obstruction(5)


def test_hanging_vertices_counted_by_angle_sum():
    t = families.brick_patterns()[3]  # vertical brick beside two horizontal ones
    inc = build_incidence(t)
    hanging = [v for v in inc if v.hanging]
    assert hanging
    for v in hanging:
        assert v.angle_sum == 1 and v.vertex_class == "boundary" and v.position == "interior"
    s = summary(t)
    assert check_ratio_identity(s) and check_linear_identity(s).holds


def test_families_satisfy_identities():
    tilings = [families.grid(m, n) for m in range(1, 6) for n in range(1, 6)]
    tilings += families.brick_patterns() + families.trapezoid_family()
    for t in tilings:
        s = summary(t)
        assert check_ratio_identity(s), t
        assert check_linear_identity(s).holds, t


def test_census_mismatch_raises(grid2):
    inc = build_incidence(grid2)
    with pytest.raises(IncidenceError):
        counting_summary(inc, 4, 5)
    with pytest.raises(IncidenceError):
        counting_summary(inc[1:], 4, 4)


def test_v_decomposition_examples():
    r = v_decomposition_classify((0, 3, 0), AngleMode())
    assert r.forced_alpha == Fraction(1, 3) and r.sum == 2
    r = v_decomposition_classify((0, 2, 1), AngleMode())
    assert r.forced_alpha == Fraction(1, 4) and r.sum == 2
    for mode in (AngleMode(), AngleMode.bound(1, 3), AngleMode.bound(1, 5)):
        r = v_decomposition_classify((1, 1, 0), mode)
        assert r.sum == 1 and r.forced_alpha is None


def test_v_decomposition_bound_mode():
    assert v_decomposition_classify((0, 3, 0), AngleMode.bound(1, 3)).sum == 2
    assert v_decomposition_classify((0, 3, 0), AngleMode.bound(1, 4)).sum is None
    with pytest.raises(ValueError):
        v_decomposition_classify((-1, 0, 0), AngleMode())


def test_unbalanced_scan():
    found = unbalanced_forced_alphas(12)
    alphas = {alpha for sols in found.values() for _, alpha in sols}
    assert alphas == {Fraction(1, 3), Fraction(1, 4)}
    assert set(found) == {(0, 3, 0), (0, 2, 1)}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 35))
def test_identities_on_domino_tilings(i):
    t = domino_tilings()[i]
    s = summary(t)
    assert check_ratio_identity(s)
    assert check_linear_identity(s).holds
    assert s.F + s.H + s.hbar == 4 * t.n


@given(st.integers(4, 60), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_linear_lhs_bounded_below_for_large_q(q, f, h, delta):
    lhs = linear_lhs(q, f, h, delta)
    if q >= 6:
        assert lhs >= 2 * q > 8


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_classify_agrees_with_direct_sum(a, b, c):
    mode = AngleMode.bound(1, 3)
    total = (a - b) * Fraction(1, 3) + b + Fraction(c, 2)
    r = v_decomposition_classify((a, b, c), mode)
    assert (r.sum is not None) == (total in (Fraction(1, 2), 1, 2))
