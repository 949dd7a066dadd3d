"""Exact arithmetic over Q and Q(sqrt d), and symbolic angles a*alpha + c*(pi/2).

Rationals are :class:`fractions.Fraction`.  A :class:`QuadraticNumber` is kept
internally as an integer triple ``(a, b, den)`` meaning ``(a + b*sqrt(d)) / den``
with ``den > 0`` and ``gcd(a, b, den) == 1``, which is noticeably faster than a
pair of Fractions in the search loops.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "QuadraticNumber",
    "RadicandMismatch",
    "ExactAngle",
    "AngleMode",
    "GENERIC",
    "ALPHA",
    "BETA",
    "RIGHT",
    "qn",
    "qn_add",
    "qn_mul",
    "qn_sign",
    "qn_sqrt",
    "angle_eq",
    "parse_qn",
    "rational_to_json",
    "rational_from_json",
]


class RadicandMismatch(ValueError):
    """Two quadratic numbers from different fields were combined."""

    def __init__(self, d1: int, d2: int) -> None:
        super().__init__(f"radicand mismatch: sqrt({d1}) vs sqrt({d2})")
        self.d1 = d1
        self.d2 = d2


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


Coercible = Union[int, Fraction, "QuadraticNumber"]


class QuadraticNumber:
    """An element ``rat + rad*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("_a", "_b", "_den", "d", "_hash")

    def __init__(self, rat: int | Fraction | str = 0, rad: int | Fraction | str = 0, d: int = 3) -> None:
        if not _squarefree(d):
            raise ValueError(f"radicand must be a squarefree integer >= 2, got {d}")
        r = Fraction(rat)
        s = Fraction(rad)
        den = r.denominator * s.denominator // math.gcd(r.denominator, s.denominator)
        self._set(r.numerator * (den // r.denominator), s.numerator * (den // s.denominator), den, d)

    def _set(self, a: int, b: int, den: int, d: int) -> None:
        if den < 0:
            a, b, den = -a, -b, -den
        g = math.gcd(math.gcd(a, b), den)
        if g > 1:
            a //= g
            b //= g
            den //= g
        self._a = a
        self._b = b
        self._den = den
        self.d = d
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, den: int, d: int) -> QuadraticNumber:
        obj = cls.__new__(cls)
        obj._set(a, b, den, d)
        return obj

    # -- accessors -------------------------------------------------------
    @property
    def rat(self) -> Fraction:
        return Fraction(self._a, self._den)

    @property
    def rad(self) -> Fraction:
        return Fraction(self._b, self._den)

    @property
    def key(self) -> tuple[int, int, int, int]:
        """Normalized integer representation, usable as a sort/hash key."""
        return (self._a, self._b, self._den, self.d)

    def is_rational(self) -> bool:
        return self._b == 0

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber._raw(self._a, -self._b, self._den, self.d)

    # -- coercion --------------------------------------------------------
    def _coerce(self, other: object) -> QuadraticNumber | None:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise RadicandMismatch(self.d, other.d)
            return other
        if isinstance(other, int):
            return QuadraticNumber._raw(other, 0, 1, self.d)
        if isinstance(other, Fraction):
            return QuadraticNumber._raw(other.numerator, 0, other.denominator, self.d)
        return None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: Coercible) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return QuadraticNumber._raw(self._a + o._a, self._b + o._b, self._den, self.d)
        return QuadraticNumber._raw(
            self._a * o._den + o._a * self._den,
            self._b * o._den + o._b * self._den,
            self._den * o._den,
            self.d,
        )

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber._raw(-self._a, -self._b, self._den, self.d)

    def __pos__(self) -> QuadraticNumber:
        return self

    def __sub__(self, other: Coercible) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coercible) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Coercible) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        return QuadraticNumber._raw(
            a1 * a2 + self.d * b1 * b2,
            a1 * b2 + a2 * b1,
            self._den * o._den,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticNumber:
        # 1/((a + b r)/n) = n (a - b r) / (a^2 - d b^2)
        norm = self._a * self._a - self.d * self._b * self._b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero quadratic number")
        return QuadraticNumber._raw(self._den * self._a, -self._den * self._b, norm, self.d)

    def __truediv__(self, other: Coercible) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._b == 0:
            if o._a == 0:
                raise ZeroDivisionError("division by zero")
            return QuadraticNumber._raw(self._a * o._den, self._b * o._den, self._den * o._a, self.d)
        return self * o.inverse()

    def __rtruediv__(self, other: Coercible) -> QuadraticNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> QuadraticNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticNumber._raw(1, 0, 1, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- sign and ordering -----------------------------------------------
    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(d)``; never approximates."""
        a, b = self._a, self._b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with d*b^2
        lhs = a * a
        rhs = self.d * b * b
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadraticNumber):
            return (
                self.d == other.d
                and self._a == other._a
                and self._b == other._b
                and self._den == other._den
            )
        if isinstance(other, (int, Fraction)):
            o = Fraction(other)
            return self._b == 0 and self._a == o.numerator and self._den == o.denominator
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self._b == 0:
                self._hash = hash(Fraction(self._a, self._den))
            else:
                self._hash = hash((self._a, self._b, self._den, self.d))
        return self._hash

    def _cmp(self, other: Coercible) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadraticNumber with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other: Coercible) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Coercible) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Coercible) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Coercible) -> bool:
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        return (self._a + self._b * math.sqrt(self.d)) / self._den

    # -- text and json ---------------------------------------------------
    def __repr__(self) -> str:
        return f"QuadraticNumber({self.rat!s}, {self.rad!s}, d={self.d})"

    def __str__(self) -> str:
        return f"({self.rat})+({self.rad})√{self.d}"

    def to_json(self) -> dict:
        return {"rat": rational_to_json(self.rat), "rad": rational_to_json(self.rad), "sqrt": self.d}

    @classmethod
    def from_json(cls, doc: dict) -> QuadraticNumber:
        if not isinstance(doc, dict) or set(doc) != {"rat", "rad", "sqrt"}:
            raise ValueError("quadratic number must be an object with keys rat, rad, sqrt")
        d = doc["sqrt"]
        if not isinstance(d, int) or isinstance(d, bool):
            raise ValueError("sqrt must be an integer")
        return cls(rational_from_json(doc["rat"]), rational_from_json(doc["rad"]), d)


def rational_to_json(r: Fraction) -> list[int]:
    return [r.numerator, r.denominator]


def rational_from_json(doc: object) -> Fraction:
    if (
        not isinstance(doc, list)
        or len(doc) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in doc)
    ):
        raise ValueError("rational must be [numerator, denominator]")
    if doc[1] <= 0:
        raise ValueError("rational denominator must be positive")
    r = Fraction(doc[0], doc[1])
    if r.numerator != doc[0] or r.denominator != doc[1]:
        raise ValueError(f"rational {doc} is not in lowest terms")
    return r


def qn(rat: int | Fraction | str, rad: int | Fraction | str = 0, d: int = 3) -> QuadraticNumber:
    """Shorthand constructor."""
    return QuadraticNumber(rat, rad, d)


def qn_add(a: QuadraticNumber, b: QuadraticNumber) -> QuadraticNumber:
    return a + b


def qn_mul(a: QuadraticNumber, b: QuadraticNumber) -> QuadraticNumber:
    return a * b


def qn_sign(a: QuadraticNumber) -> int:
    return a.sign()


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    n, m = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if n * n == r.numerator and m * m == r.denominator:
        return Fraction(n, m)
    return None


def qn_sqrt(t: QuadraticNumber) -> QuadraticNumber | None:
    """Nonnegative square root of ``t`` inside its own field, or None."""
    if t.sign() < 0:
        return None
    t0, t1, d = t.rat, t.rad, t.d
    if t1 == 0:
        a = _rational_sqrt(t0)
        if a is not None:
            return QuadraticNumber(a, 0, d)
        b = _rational_sqrt(t0 / d)
        if b is not None:
            return QuadraticNumber(0, b, d)
        return None
    # (A + B r)^2 = A^2 + d B^2 + 2AB r, with A, B != 0
    disc = _rational_sqrt(t0 * t0 - d * t1 * t1)
    if disc is None:
        return None
    for a2 in ((t0 + disc) / 2, (t0 - disc) / 2):
        a = _rational_sqrt(a2)
        if not a:
            continue
        b = t1 / (2 * a)
        root = QuadraticNumber(a, b, d)
        if root.sign() < 0:
            root = -root
        if root * root == t:
            return root
    return None


_QN_TERM = re.compile(r"^\(?\s*([+-]?\d+(?:/\d+)?)\s*\)?$")


def parse_qn(text: str, d: int | None = None) -> QuadraticNumber:
    """Parse the human form ``(p/q)+(r/s)√d``.

    Also accepted: ``3/2``, ``√3``, ``2√3``, ``-(1/2)√3``, ``1+√3``, and
    ``sqrt3`` in place of ``√3``.  ``d`` fixes the field when the text has no
    radical part.
    """
    s = text.replace(" ", "").replace("sqrt", "√")
    if not s:
        raise ValueError("empty quadratic number")
    # split at the top-level +/- preceding the radical term
    rat_part, rad_part, field = "0", "0", None
    m = re.search(r"√(\d+)$", s)
    if m:
        field = int(m.group(1))
        body = s[: m.start()]
        # find the start of the radical coefficient: last +/- outside parentheses
        depth = 0
        cut = 0
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch in "+-" and depth == 0 and i > 0 and body[i - 1] not in "*(":
                cut = i
        rat_part = body[:cut] or "0"
        coeff = body[cut:]
        if coeff in ("", "+"):
            rad_part = "1"
        elif coeff == "-":
            rad_part = "-1"
        else:
            neg = coeff.startswith("-")
            coeff = coeff.lstrip("+-")
            if coeff.endswith("*"):
                coeff = coeff[:-1]
            inner = _QN_TERM.match(coeff)
            if not inner:
                raise ValueError(f"cannot parse radical coefficient {coeff!r} in {text!r}")
            val = Fraction(inner.group(1))
            rad_part = str(-val if neg else val)
    else:
        rat_part = s
    neg = False
    if rat_part.startswith("-(") or rat_part.startswith("+("):
        neg = rat_part[0] == "-"
        rat_part = rat_part[1:]
    inner = _QN_TERM.match(rat_part)
    if not inner:
        raise ValueError(f"cannot parse rational part {rat_part!r} in {text!r}")
    rat = Fraction(inner.group(1))
    if neg:
        rat = -rat
    if field is None:
        field = d if d is not None else 3
    elif d is not None and d != field:
        raise RadicandMismatch(field, d)
    return QuadraticNumber(rat, Fraction(rad_part), field)


# ---------------------------------------------------------------------------
# Symbolic angles


@dataclass(frozen=True)
class AngleMode:
    """``GenericAlpha`` (p is None) or ``BoundAlpha`` with alpha = (p/q) * pi."""

    p: int | None = None
    q: int | None = None

    def __post_init__(self) -> None:
        if (self.p is None) != (self.q is None):
            raise ValueError("bind both p and q, or neither")
        if self.p is not None:
            if self.q <= 0:
                raise ValueError("q must be positive")
            if not (0 < Fraction(self.p, self.q) < Fraction(1, 2)):
                raise ValueError(f"bound alpha {self.p}/{self.q}*pi outside (0, pi/2)")

    @classmethod
    def bound(cls, p: int, q: int) -> AngleMode:
        g = math.gcd(p, q)
        return cls(p // g, q // g)

    @property
    def is_generic(self) -> bool:
        return self.p is None

    @property
    def alpha(self) -> Fraction:
        """alpha as a rational multiple of pi (bound mode only)."""
        if self.p is None:
            raise ValueError("alpha is not bound in generic mode")
        return Fraction(self.p, self.q)

    def to_json(self) -> dict:
        if self.p is None:
            return {"mode": "generic"}
        return {"mode": "bound", "p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, doc: dict) -> AngleMode:
        mode = doc.get("mode")
        if mode == "generic":
            return cls()
        if mode == "bound":
            p, q = doc.get("p"), doc.get("q")
            if not isinstance(p, int) or not isinstance(q, int):
                raise ValueError("bound angle mode needs integer p and q")
            return cls.bound(p, q)
        raise ValueError(f"unknown angle mode {mode!r}")


GENERIC = AngleMode()


@dataclass(frozen=True, order=True)
class ExactAngle:
    """The angle ``alpha_coeff * alpha + right_coeff * (pi/2)``."""

    alpha_coeff: int = 0
    right_coeff: int = 0

    def __add__(self, other: ExactAngle) -> ExactAngle:
        return ExactAngle(self.alpha_coeff + other.alpha_coeff, self.right_coeff + other.right_coeff)

    def __sub__(self, other: ExactAngle) -> ExactAngle:
        return ExactAngle(self.alpha_coeff - other.alpha_coeff, self.right_coeff - other.right_coeff)

    def __neg__(self) -> ExactAngle:
        return ExactAngle(-self.alpha_coeff, -self.right_coeff)

    def __mul__(self, k: int) -> ExactAngle:
        return ExactAngle(self.alpha_coeff * k, self.right_coeff * k)

    __rmul__ = __mul__

    def in_pi(self, mode: AngleMode) -> Fraction:
        """Value as a rational multiple of pi; needs a bound mode."""
        return self.alpha_coeff * mode.alpha + Fraction(self.right_coeff, 2)

    def name(self) -> str:
        table = {ALPHA: "alpha", BETA: "beta", RIGHT: "pi/2"}
        if self in table:
            return table[self]
        return f"{self.alpha_coeff}a+{self.right_coeff}(pi/2)"


ALPHA = ExactAngle(1, 0)
BETA = ExactAngle(-1, 2)
RIGHT = ExactAngle(0, 1)


def angle_eq(x: ExactAngle, y: ExactAngle, mode: AngleMode) -> bool:
    if mode.is_generic:
        return x == y
    return x.in_pi(mode) == y.in_pi(mode)
