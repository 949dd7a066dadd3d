"""Vertex census of a tiling by congruent convex q-gons.

For every tile vertex w we record the tiles having w as a vertex and their
angles at w, in clockwise order starting from the positive x-axis.  The
census sets F and H are defined by the angle sum at w (2pi and pi), so a
vertex lying inside another tile's side (a T-junction) is counted in H even
though it is an interior point of the region; ``hanging`` marks those.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exactnum import AngleMode, ExactAngle
from .geometry import Point, ccw_key, point_on_segment
from .tiling import Tiling

__all__ = [
    "IncidenceError",
    "VertexIncidence",
    "CountingSummary",
    "IdentityVerdict",
    "VDecomposition",
    "build_incidence",
    "counting_summary",
    "check_ratio_identity",
    "check_linear_identity",
    "six_gon_obstruction",
    "v_decomposition_classify",
    "unbalanced_forced_alphas",
]

CORNER = "corner"
BOUNDARY = "boundary"
INTERIOR = "interior"

_SUM_CLASS = {Fraction(1, 2): CORNER, Fraction(1): BOUNDARY, Fraction(2): INTERIOR}


class IncidenceError(ValueError):
    pass


@dataclass(frozen=True)
class VertexIncidence:
    w: Point
    tiles: tuple[int, ...]  # I(w), clockwise
    angles: tuple[ExactAngle | None, ...]  # theta_j(w), same order
    labels: tuple[str, ...]  # prototile vertex label of each tile at w
    angle_sum: Fraction  # total angle at w, as a multiple of pi
    position: str  # corner / boundary / interior, by location in the region

    @property
    def vertex_class(self) -> str:
        """Corner, Boundary or Interior by angle sum (pi/2, pi, 2pi)."""
        return _SUM_CLASS[self.angle_sum]

    @property
    def hanging(self) -> bool:
        """An interior point lying inside some other tile's side."""
        return self.position == INTERIOR and self.angle_sum == 1

    @property
    def pattern(self) -> tuple[str, ...]:
        return tuple(a.name() if a is not None else "?" for a in self.angles)

    def __len__(self) -> int:
        return len(self.tiles)


def _clockwise_key(v: Point):
    # clockwise angle from +x = counterclockwise angle of the mirrored vector
    return ccw_key(Point(v[0], -v[1]))


def build_incidence(t: Tiling, strict: bool = True) -> list[VertexIncidence]:
    """One record per distinct tile vertex, sorted by (y, x).

    With ``strict`` the exact angle sum must match the geometric one; turn it
    off to inspect configurations that are not tilings.
    """
    at: dict[Point, list] = {}
    for verts in t.tile_vertices:
        for i, v in enumerate(verts):
            prev = verts[i - 1].point
            at.setdefault(v.point, []).append((v, prev - v.point))
    region = t.region
    sides = t.sides
    out = []
    for w in sorted(at, key=Point.lex_yx):
        entries = sorted(at[w], key=lambda e: _clockwise_key(e[1]))
        if region.is_corner(w):
            position, total = CORNER, Fraction(1, 2)
        elif region.on_boundary(w):
            position, total = BOUNDARY, Fraction(1)
        else:
            position = INTERIOR
            inside_side = any(point_on_segment(w, s.segment.p, s.segment.q, strict=True) for s in sides)
            total = Fraction(1) if inside_side else Fraction(2)
        angles = tuple(v.angle for v, _ in entries)
        if strict and all(a is not None for a in angles):
            exact = sum(angles, ExactAngle())
            mode = t.angle_mode
            if mode.is_generic:
                if exact.alpha_coeff == 0 and Fraction(exact.right_coeff, 2) != total:
                    raise IncidenceError(f"angle sum at {w} does not match its position")
            elif exact.in_pi(mode) != total:
                raise IncidenceError(f"angle sum at {w} is {exact.in_pi(mode)}pi, expected {total}pi")
        out.append(
            VertexIncidence(
                w,
                tuple(v.tile for v, _ in entries),
                angles,
                tuple(v.label for v, _ in entries),
                total,
                position,
            )
        )
    return out


@dataclass(frozen=True)
class CountingSummary:
    q: int
    N: int
    cardF: int
    cardH: int
    F: int
    H: int
    hbar: int
    Delta: int

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("q", "N", "cardF", "cardH", "F", "H", "hbar", "Delta")}


def counting_summary(inc: list[VertexIncidence], q: int, N: int) -> CountingSummary:
    cardF = cardH = F = H = hbar = corners = 0
    for v in inc:
        k = len(v)
        if v.angle_sum == 2:
            cardF += 1
            F += k
        elif v.angle_sum == 1:
            cardH += 1
            H += k
        else:
            corners += 1
            hbar += k
    if corners != 4:
        raise IncidenceError(f"expected 4 region corners among the vertices, found {corners}")
    if F + H + hbar != N * q:
        raise IncidenceError(f"census mismatch: F + H + hbar = {F + H + hbar}, N*q = {N * q}")
    delta = F + H + hbar - 3 * cardF - 2 * cardH - corners
    return CountingSummary(q, N, cardF, cardH, F, H, hbar, delta)


def check_ratio_identity(s: CountingSummary) -> bool:
    return Fraction(2 * s.cardF + s.cardH + 2, s.F + s.H + s.hbar) == Fraction(s.q - 2, s.q)


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    lhs: int


def linear_lhs(q: int, cardF: int, cardH: int, delta: int) -> int:
    return (q - 6) * cardF + (q - 4) * cardH + (q - 2) * delta + 2 * q


def check_linear_identity(s: CountingSummary) -> IdentityVerdict:
    lhs = linear_lhs(s.q, s.cardF, s.cardH, s.Delta)
    return IdentityVerdict(lhs == 8, lhs)


def six_gon_obstruction(q: int) -> int:
    """Least value of the linear census expression over cardF, cardH, Delta >= 0.

    All three coefficients are nonnegative once q >= 6, so the minimum sits
    at the origin and equals 2q, which exceeds the required value 8.
    """
    if q < 6:
        raise ValueError("the obstruction needs q >= 6")
    coeffs = (q - 6, q - 4, q - 2)
    assert min(coeffs) >= 0
    return linear_lhs(q, 0, 0, 0)


# ---------------------------------------------------------------------------
# V-decompositions a*alpha + b*beta + c*(pi/2)

_TOTALS = (Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass(frozen=True)
class VDecomposition:
    sum: Fraction | None  # multiple of pi, or None
    forced_alpha: Fraction | None  # multiple of pi
    solutions: tuple[tuple[Fraction, Fraction], ...] = ()  # (total, alpha) pairs in generic mode


def v_decomposition_classify(counts: tuple[int, int, int], mode: AngleMode) -> VDecomposition:
    """Which of pi/2, pi, 2pi can a*alpha + b*beta + c*pi/2 equal?

    With beta = pi - alpha the total is (a - b)*alpha + (b + c/2)*pi.  In
    generic mode an unequal a, b pins alpha to a single value per target;
    only values in (0, pi/2) are kept.
    """
    a, b, c = counts
    if min(counts) < 0:
        raise ValueError("counts must be nonnegative")
    const = b + Fraction(c, 2)
    if not mode.is_generic:
        total = (a - b) * mode.alpha + const
        return VDecomposition(total if total in _TOTALS else None, None)
    if a == b:
        return VDecomposition(const if const in _TOTALS else None, None)
    sols = []
    for target in _TOTALS:
        alpha = (target - const) / (a - b)
        if 0 < alpha < Fraction(1, 2):
            sols.append((target, alpha))
    if not sols:
        return VDecomposition(None, None)
    return VDecomposition(sols[0][0], sols[0][1], tuple(sols))


def unbalanced_forced_alphas(limit: int = 12) -> dict[tuple[int, int, int], tuple]:
    """Every (a, b, c) with a < b, entries up to ``limit``, that can close up.

    Returns the generic-mode solutions per triple.
    """
    found = {}
    for a, b, c in product(range(limit + 1), repeat=3):
        if a >= b:
            continue
        res = v_decomposition_classify((a, b, c), AngleMode())
        if res.solutions:
            found[(a, b, c)] = res.solutions
    return found
