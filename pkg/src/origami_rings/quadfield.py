"""Exact arithmetic in imaginary quadratic fields Q(sqrt(m)), m < 0 squarefree.

Scalars are :class:`fractions.Fraction`, which is already canonical
(positive denominator, reduced) after every operation and hashes on that
canonical form.  Elements ``re + co*sqrt(m)`` are stored as two fractions
plus the field tag; no floating point value is ever produced here.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Union

Rational = Fraction

#: Upper bound on |m| accepted by :class:`FieldTag`.
MAX_ABS_M = 10**6

Scalar = Union[int, Fraction]


class FieldError(ValueError):
    """Invalid field parameter (m not negative, not squarefree, too large)."""


class FieldMismatch(ValueError):
    """Elements from different fields were combined."""


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    for p in range(2, isqrt(n) + 1):
        if n % (p * p) == 0:
            return False
    return True


@dataclass(frozen=True, order=True)
class FieldTag:
    """The field Q(sqrt(m)).  Validated on construction."""

    m: int

    def __post_init__(self):
        m = self.m
        if isinstance(m, bool) or not isinstance(m, int):
            raise FieldError(f"m must be an integer, got {m!r}")
        if m >= 0:
            raise FieldError(f"m must be negative, got {m}")
        if -m > MAX_ABS_M:
            raise FieldError(f"|m| = {-m} exceeds the bound {MAX_ABS_M}")
        if not is_squarefree(m):
            raise FieldError(f"m = {m} is not squarefree")

    def __str__(self):
        return f"sqrt({self.m})"

    def elem(self, re: Scalar = 0, co: Scalar = 0) -> "QuadElem":
        return QuadElem(Fraction(re), Fraction(co), self)

    @property
    def zero(self) -> "QuadElem":
        return self.elem(0, 0)

    @property
    def one(self) -> "QuadElem":
        return self.elem(1, 0)

    @property
    def sqrt_m(self) -> "QuadElem":
        return self.elem(0, 1)


@dataclass(frozen=True, eq=True)
class QuadElem:
    """``re + co*sqrt(m)`` with rational ``re`` and ``co``."""

    re: Fraction
    co: Fraction
    tag: FieldTag

    def __post_init__(self):
        # Accept ints for convenience; store canonical fractions only.
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", Fraction(self.re))
        if type(self.co) is not Fraction:
            object.__setattr__(self, "co", Fraction(self.co))

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.tag != self.tag:
                raise FieldMismatch(f"cannot combine elements of {self.tag} and {other.tag}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem(Fraction(other), Fraction(0), self.tag)
        return NotImplemented

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.re + o.re, self.co + o.co, self.tag)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.re - o.re, self.co - o.co, self.tag)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return QuadElem(-self.re, -self.co, self.tag)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem(self.re * other, self.co * other, self.tag)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = self.tag.m
        return QuadElem(
            self.re * o.re + m * self.co * o.co,
            self.re * o.co + self.co * o.re,
            self.tag,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        """Galois conjugate; for m < 0 this is complex conjugation."""
        return QuadElem(self.re, -self.co, self.tag)

    def norm(self) -> Fraction:
        """``x * conj(x)``, i.e. ``re**2 - m*co**2`` (the squared modulus)."""
        return self.re * self.re - self.tag.m * self.co * self.co

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(m))")
        return QuadElem(self.re / n, -self.co / n, self.tag)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(self.re / other, self.co / other, self.tag)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.co)

    # -- misc -------------------------------------------------------------

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.co)

    def to_complex(self) -> complex:
        """Embedding into C with sqrt(m) -> i*sqrt(|m|).  Lossy; for rendering only."""
        return complex(float(self.re), float(self.co) * (-self.tag.m) ** 0.5)

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"QuadElem({format_elem(self)!r})"


def bracket(x: QuadElem, y: QuadElem) -> Fraction:
    """Coefficient r with ``conj(x)*y - x*conj(y) == r*sqrt(m)``.

    Expanding gives ``r = 2*(x.re*y.co - x.co*y.re)``.  The factor 2 is kept;
    only ratios of brackets are ever consumed.
    """
    if x.tag != y.tag:
        raise FieldMismatch(f"cannot bracket elements of {x.tag} and {y.tag}")
    return 2 * (x.re * y.co - x.co * y.re)


@dataclass(frozen=True, order=True)
class Direction:
    """A fold direction: a nonzero element modulo nonzero rational scaling.

    The representative is a primitive integer vector ``(re, co)`` whose
    first nonzero entry in ``(co, re)`` order is positive, so ``u`` and
    ``-u`` (and every rational multiple) collapse to one value.
    """

    re: int
    co: int
    tag: FieldTag

    def __post_init__(self):
        if self.re == 0 and self.co == 0:
            raise ValueError("zero vector is not a direction")
        if gcd(self.re, self.co) != 1 or not (self.co > 0 or (self.co == 0 and self.re > 0)):
            raise ValueError(f"({self.re}, {self.co}) is not a canonical direction; use canonical_direction()")

    @property
    def rep(self) -> QuadElem:
        return QuadElem(Fraction(self.re), Fraction(self.co), self.tag)

    def __str__(self):
        return f"({self.re},{self.co})"


def canonical_direction(x: QuadElem) -> Direction:
    if not x:
        raise ValueError("zero element has no direction")
    den = lcm(x.re.denominator, x.co.denominator)
    a = x.re.numerator * (den // x.re.denominator)
    b = x.co.numerator * (den // x.co.denominator)
    g = gcd(a, b)
    a, b = a // g, b // g
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return Direction(a, b, x.tag)


# -- textual form ------------------------------------------------------------

def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_elem(x: QuadElem) -> str:
    """Render as e.g. ``3+2*sqrt(-5)``, ``1/2-1/2*sqrt(-3)``, ``-sqrt(-7)``, ``0``."""
    s = f"sqrt({x.tag.m})"
    if x.co == 0:
        return _format_rational(x.re)
    if x.co == 1:
        co_part = s
    elif x.co == -1:
        co_part = "-" + s
    else:
        co_part = f"{_format_rational(x.co)}*{s}"
    if x.re == 0:
        return co_part
    sign = "" if co_part.startswith("-") else "+"
    return f"{_format_rational(x.re)}{sign}{co_part}"


_TERM = _re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<m1>-?\d+)\s*\)
        | sqrt\(\s*(?P<m2>-?\d+)\s*\)(?:\s*/\s*(?P<div>\d+))?
        | (?P<rat>\d+(?:/\d+)?)
        )\s*""",
    _re.VERBOSE,
)


def parse_elem(text: str, tag: FieldTag | None = None) -> QuadElem:
    """Parse the textual form produced by :func:`format_elem`.

    Whitespace is ignored.  ``tag`` is required when the text has no
    ``sqrt(m)`` term; when both are present they must agree.
    """
    pos = 0
    re_part = Fraction(0)
    co_part = Fraction(0)
    seen_m = None
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    first = True
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse element {text!r} at offset {pos}")
        if not first and mt.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        first = False
        sign = -1 if mt.group("sign") == "-" else 1
        if mt.group("rat") is not None:
            re_part += sign * Fraction(mt.group("rat"))
        else:
            m_text = mt.group("m1") or mt.group("m2")
            if seen_m is not None and int(m_text) != seen_m:
                raise ValueError(f"inconsistent sqrt arguments in {text!r}")
            seen_m = int(m_text)
            if mt.group("coef") is not None:
                c = Fraction(mt.group("coef"))
            elif mt.group("div") is not None:
                c = Fraction(1, int(mt.group("div")))
            else:
                c = Fraction(1)
            co_part += sign * c
        pos = mt.end()
    if seen_m is not None:
        if tag is None:
            tag = FieldTag(seen_m)
        elif tag.m != seen_m:
            raise FieldMismatch(f"element {text!r} is not in {tag}")
    elif tag is None:
        raise ValueError(f"element {text!r} has no sqrt term; a field must be given")
    return QuadElem(re_part, co_part, tag)
