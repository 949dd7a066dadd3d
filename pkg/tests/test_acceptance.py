"""Acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed at the end of
the pytest run (see conftest.py) or when this file is run as a script.
"""
from __future__ import annotations

import random
import time
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from dissect import families
from dissect.exactnum import AngleMode, qn
from dissect.families import mirrored, square_symmetries
from dissect.geometry import Point, Prototile, rotate
from dissect.hgraph import (
    angle_pattern_check,
    build_hgraph,
    components,
    eighth_direction_triples,
    parity_theorem_check,
    peel_cycles,
    undirected_cycle_certificates,
    undirected_cycle_parity,
    undirected_cycles,
)
from dissect.incidence import (
    build_incidence,
    check_linear_identity,
    check_ratio_identity,
    counting_summary,
    six_gon_obstruction,
    unbalanced_forced_alphas,
)
from dissect.render import render_svg
from dissect.search import SearchConfig, enumerate_tilings, square_for
from dissect.segments import (
    area_constraint_check,
    boundary_identified_relations,
    pure2_check,
    scan_special_segments,
    solve_x,
    sqrt3_sides_even,
)
from dissect.tiling import Region, load, save, validate

FIXTURES = Path(__file__).parent / "fixtures"
RESULTS: dict[int, str] = {}
PI_3 = AngleMode.bound(1, 3)


def record(n: int, title: str, limit: float, body) -> None:
    t0 = time.perf_counter()
    try:
        detail = body()
        error = None
    except AssertionError as exc:
        detail, error = "", str(exc) or "assertion failed"
    dt = time.perf_counter() - t0
    ok = error is None and dt < limit
    if error is None and not ok:
        error = f"took {dt:.1f}s, limit {limit:.0f}s"
    verdict = "PASS" if ok else "FAIL"
    RESULTS[n] = f"[{verdict}] criterion {n}: {title} ({dt:.2f}s < {limit:.0f}s) {detail if ok else error}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


# ---------------------------------------------------------------------------
# shared inputs


def identity_family():
    out = [families.grid(m, n) for m in range(1, 6) for n in range(1, 6)]
    out += families.brick_patterns()
    out += families.trapezoid_family()
    return out


SEARCH_CASES = [
    # (x, N, expect tilings, label)
    (qn(Fraction(-1, 2), Fraction(1, 2)), 2, True, "x=(sqrt3-1)/2, N=2"),
    (qn(0, Fraction(1, 3)), 3, False, "x=sqrt3/3, N=3"),
    (qn(Fraction(-1, 2), 1), 4, True, "x=sqrt3-1/2, N=4"),
    (qn(Fraction(-1, 2), Fraction(3, 2)), 6, True, "x=3sqrt3/2-1/2, N=6"),
]


@lru_cache(maxsize=None)
def search_case(i: int):
    x, n, _, _ = SEARCH_CASES[i]
    proto = families.trapezoid(x)
    region = square_for(proto, n)
    assert region is not None, f"no square for N={n}"
    t0 = time.perf_counter()
    res = enumerate_tilings(SearchConfig(proto, region, n, dedup_symmetry=False))
    return res, time.perf_counter() - t0


def searched_tilings():
    return [t for i in range(len(SEARCH_CASES)) for t in search_case(i)[0].tilings]


def pi3_tilings():
    base = [t for t in families.trapezoid_family() if t.angle_mode == PI_3] + searched_tilings()
    out = []
    for t in base:
        out += [mirrored(t, s) for s in square_symmetries(t.region)]
    return out


# ---------------------------------------------------------------------------


def test_criterion_1_counting_identities():
    def body():
        tilings = identity_family()
        for t in tilings:
            assert validate(t).valid
            s = counting_summary(build_incidence(t), t.q, t.n)
            assert check_ratio_identity(s), f"ratio identity fails on {s}"
            assert check_linear_identity(s).holds, f"linear identity fails on {s}"
        g = counting_summary(build_incidence(families.grid(2, 2)), 4, 4)
        census = (g.cardF, g.cardH, g.F, g.H, g.hbar, g.Delta)
        assert census == (1, 4, 4, 8, 4, 1), f"2x2 census {census}"
        return f"{len(tilings)} tilings, both identities exact; 2x2 census {census}"

    record(1, "counting identities", 5, body)


def test_criterion_2_six_gon_obstruction():
    def body():
        for q in range(6, 101):
            v = six_gon_obstruction(q)
            assert v == 2 * q and v > 8
        d = 2
        pts = [(0, 0), (2, 0), (3, 1), (3, 2), (1, 2), (0, 1)]
        hexagon = Prototile.convex_polygon([Point(qn(x, 0, d), qn(y, 0, d)) for x, y in pts])
        runs = []
        for w, h, n in [(5, 2, 2), (5, 3, 3), (5, 4, 4), (10, 2, 4), (5, 6, 6)]:
            res = enumerate_tilings(SearchConfig(hexagon, Region(qn(w, 0, d), qn(h, 0, d)), n, node_limit=10**6))
            assert res.exhausted and not res.tilings, f"hexagon in {w}x{h}: {len(res.tilings)} tilings"
            runs.append(f"{w}x{h}:{res.nodes_explored}")
        return "2q for q in [6,100]; hexagon: 0 tilings, exhausted, nodes " + " ".join(runs)

    record(2, "q >= 6 obstruction", 60, body)


def random_multigraph(rng: random.Random):
    n = rng.randint(1, 12)
    m = rng.randint(0, 40)
    arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    if rng.random() < 0.5:
        half = arcs[: m // 2]
        arcs = half + [(t, o) for o, t in reversed(half)]
        rng.shuffle(arcs)
    return arcs


def split_components(arcs):
    parent = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            v = parent[v]
        return v

    for o, t in arcs:
        parent[find(o)] = find(t)
    groups = defaultdict(list)
    for a in arcs:
        groups[find(a[0])].append(a)
    return list(groups.values())


def test_criterion_3_eulerian_equivalence():
    def body():
        rng = random.Random(20240601)
        comps = balanced = 0
        for _ in range(1000):
            for comp in split_components(random_multigraph(rng)):
                deg = defaultdict(int)
                for o, t in comp:
                    deg[o] += 1
                    deg[t] -= 1
                is_balanced = all(v == 0 for v in deg.values())
                cycles = peel_cycles(comp)
                consumed = cycles is not None and sorted(i for c in cycles for i in c) == list(range(len(comp)))
                assert is_balanced == consumed, f"mismatch on {comp}"
                comps += 1
                balanced += is_balanced
        return f"1000 graphs, {comps} components ({balanced} balanced), equivalence holds on all"

    record(3, "Eulerian equivalence", 10, body)


def test_criterion_4_parity_theorem():
    def body():
        tilings = searched_tilings()
        assert tilings, "no tilings from the searches"
        cycles = 0
        for t in tilings:
            g = build_hgraph(t)
            assert angle_pattern_check(t, g).eulerian
            for comp in components(g):
                assert peel_cycles([(e.origin, e.terminus) for e in comp]) is not None
            rep = parity_theorem_check(t)
            assert rep.n_even and t.n % 2 == 0
            for c in rep.certificates:
                assert c.closure and c.norm_equality and c.even, c
                assert c.a * c.a + c.b * c.b == c.c * c.c + c.d * c.d
            cycles += len(rep.certificates)
        return f"{len(tilings)} searched tilings, {cycles} feasible cycles, all certificates exact"

    record(4, "parity theorem", 300, body)


def test_criterion_5_algebraic_lemmas():
    def body():
        tilings = pi3_tilings()
        solved = degenerate = 0
        for t in tilings:
            x = t.prototile.x
            res = solve_x(boundary_identified_relations(t))
            assert res.kind != "contradiction", res.detail
            if res.kind == "solved":
                assert (res.r, res.s) == (x.rat, x.rad), f"solved {res.r}, {res.s} for x = {x}"
                solved += 1
            else:
                # no relation involves x; the fallback parity statement must hold
                assert sqrt3_sides_even(t)
                degenerate += 1
            chk = area_constraint_check(t)
            assert chk.s_positive and chk.consistent
        assert solved > 0, "no tiling determines x"
        rng = random.Random(7)
        xs = []
        while len(xs) < 20:
            r = Fraction(rng.randint(-20, 20), rng.randint(1, 8))
            s = Fraction(rng.randint(1, 20), rng.randint(1, 8))
            xs.append(qn(r, s))
        for x in xs:
            assert pure2_check(x, 50) is None, f"pure-2 witness for x = {x}"
        return (f"{len(tilings)} tilings: {solved} solved exactly, {degenerate} all-degenerate; "
                f"s > 0 on all; no pure-2 witness for 20 x values (bound 50)")

    record(5, "alpha = pi/3 algebraic lemmas", 30, body)


def test_criterion_6_odd_n_search():
    def body():
        parts = []
        for i, (x, n, expect, label) in enumerate(SEARCH_CASES[:2]):
            res, dt = search_case(i)
            assert dt < 300, f"{label} took {dt:.0f}s"
            assert res.exhausted, f"{label} not exhausted"
            if expect:
                assert res.tilings, f"{label}: no tiling found"
            else:
                assert not res.tilings, f"{label}: {len(res.tilings)} tilings"
            parts.append(f"{label}: {len(res.tilings)} tilings, {res.nodes_explored} nodes, exhausted in {dt:.2f}s")
        return "; ".join(parts)

    record(6, "odd-N non-existence", 600, body)


def test_criterion_7_pi4_variant():
    def body():
        t = families.pi4_stacked_pairs()
        assert t.angle_mode == AngleMode.bound(1, 4) and validate(t).valid
        assert undirected_cycle_parity(t)
        d = t.d
        one = qn(2, 0, d)
        eighth = {rotate(Point(one, one * 0), k, d) for k in range(8)}
        cycles = undirected_cycles(build_hgraph(t))
        for c in cycles:
            for v in c:
                assert v in eighth, f"direction {v} not a multiple of pi/4"
        certs = undirected_cycle_certificates(t)
        assert all(c.holds for c in certs)
        assert eighth_direction_triples() == []
        return f"{t.n} tiles, {len(certs)} undirected cycles, all even with eighth-turn directions"

    record(7, "alpha = pi/4 variant", 5, body)


def test_criterion_8_special_segments():
    def body():
        tilings = [t for t in identity_family() if t.prototile.kind == "trapezoid" and t.angle_mode == PI_3]
        tilings += searched_tilings()
        heads = 0
        for t in tilings:
            found = scan_special_segments(t)
            assert all(h.theta != "alpha" for _, h in found), "special segment with theta = alpha"
            heads += len(found)
        forced = unbalanced_forced_alphas(12)
        alphas = {a for sols in forced.values() for _, a in sols}
        assert alphas == {Fraction(1, 3), Fraction(1, 4)}, alphas
        return (f"{len(tilings)} pi/3 tilings, {heads} special segments, none with theta = alpha; "
                f"unbalanced vertices force alpha in {{pi/3, pi/4}}")

    record(8, "special-segment obstruction", 10, body)


def test_criterion_9_round_trip():
    def body():
        files = sorted(FIXTURES.glob("*.json"))
        assert files
        for p in files:
            raw = p.read_bytes()
            t = load(raw)
            assert save(t) == raw, f"{p.name} does not round-trip"
            assert save(load(save(t))) == raw
            layers = ["tiles", "labels", "vertices", "segments"]
            if t.prototile.kind == "trapezoid":
                layers.append("hgraph")
            assert render_svg(t, layers) == render_svg(load(raw), layers), f"{p.name} SVG differs"
        return f"{len(files)} fixtures: load/save identity, byte-identical saves and SVG"

    record(9, "round trip and determinism", 5, body)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
