"""Rings of integers of Q(sqrt(m)) and the fold directions that construct them.

For m = 2, 3 (mod 4) the ring of integers is Z[sqrt(m)] and the directions
are {1, sqrt(m), 1+sqrt(m)}; for m = 1 (mod 4) it is the half-integer
lattice {(a + b*sqrt(m))/2 : a = b mod 2} and the directions are
{1, 1+sqrt(m), -1+sqrt(m)}.  Since m < 0, sqrt(m) points along i and
1+sqrt(m) along e^{i*arg(1+sqrt(m))}; -1+sqrt(m) is the mirror image.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .quadfield import Direction, FieldTag, QuadElem, canonical_direction


class RingKind(enum.Enum):
    TWO_THREE_MOD_4 = "TwoThreeMod4"
    ONE_MOD_4 = "OneMod4"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RingClass:
    tag: FieldTag
    kind: RingKind


def ring_class(tag: FieldTag) -> RingClass:
    # Python's % is already the non-negative residue: -5 % 4 == 3.
    r = tag.m % 4
    kind = RingKind.ONE_MOD_4 if r == 1 else RingKind.TWO_THREE_MOD_4
    return RingClass(tag, kind)


def is_integer(z: QuadElem) -> bool:
    """Membership in the ring of integers of ``z.tag``'s field."""
    if ring_class(z.tag).kind is RingKind.TWO_THREE_MOD_4:
        return z.re.denominator == 1 and z.co.denominator == 1
    a, b = 2 * z.re, 2 * z.co
    return a.denominator == 1 and b.denominator == 1 and (a.numerator - b.numerator) % 2 == 0


def direction_set(tag: FieldTag) -> list[Direction]:
    """The three directions, in the fixed order used by trace indices.

    TwoThreeMod4: ``[1, i, e^{i theta}]``; OneMod4: ``[1, e^{i theta}, e^{i(pi - theta)}]``.
    """
    one = tag.one
    s = tag.sqrt_m
    if ring_class(tag).kind is RingKind.TWO_THREE_MOD_4:
        gens = [one, s, one + s]
    else:
        gens = [one, one + s, s - one]
    return [canonical_direction(g) for g in gens]


# -- the twelve closed-form cases -------------------------------------------
#
# Each formula takes the coefficients p = a + b*sqrt(m), q = c + d*sqrt(m)
# and returns (re, co) of I_{u,v}(p, q).  The formulas are linear, so the
# same table serves for half-integer inputs.  Used by tests and the planner
# for cross-checking only; the closure engine never reads it.

Coeffs = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CaseFormula:
    kind: RingKind
    number: int
    u: int
    v: int
    label: str
    formula: Callable[[Fraction, Fraction, Fraction, Fraction], Coeffs]
    text: str

    def apply(self, p: QuadElem, q: QuadElem) -> QuadElem:
        re, co = self.formula(p.re, p.co, q.re, q.co)
        return QuadElem(Fraction(re), Fraction(co), p.tag)


_T = RingKind.TWO_THREE_MOD_4
_O = RingKind.ONE_MOD_4

CASE_TABLE: tuple[CaseFormula, ...] = (
    CaseFormula(_T, 1, 0, 1, "I_{1,i}", lambda a, b, c, d: (c, b), "c + b*sqrt(m)"),
    CaseFormula(_T, 2, 0, 2, "I_{1,e^{it}}", lambda a, b, c, d: (b + c - d, b), "b+c-d + b*sqrt(m)"),
    CaseFormula(_T, 3, 1, 0, "I_{i,1}", lambda a, b, c, d: (a, d), "a + d*sqrt(m)"),
    CaseFormula(_T, 4, 1, 2, "I_{i,e^{it}}", lambda a, b, c, d: (a, a - c + d), "a + (a-c+d)*sqrt(m)"),
    CaseFormula(_T, 5, 2, 0, "I_{e^{it},1}", lambda a, b, c, d: (a - b + d, d), "a-b+d + d*sqrt(m)"),
    CaseFormula(_T, 6, 2, 1, "I_{e^{it},i}", lambda a, b, c, d: (c, -a + b + c), "c + (-a+b+c)*sqrt(m)"),
    CaseFormula(_O, 1, 0, 1, "I_{1,e^{it}}", lambda a, b, c, d: (b + c - d, b), "b+c-d + b*sqrt(m)"),
    CaseFormula(_O, 2, 0, 2, "I_{1,e^{i(pi-t)}}", lambda a, b, c, d: (c + d - b, b), "c+d-b + b*sqrt(m)"),
    CaseFormula(_O, 3, 1, 0, "I_{e^{it},1}", lambda a, b, c, d: (a - b + d, d), "a-b+d + d*sqrt(m)"),
    CaseFormula(
        _O, 4, 1, 2, "I_{e^{it},e^{i(pi-t)}}",
        lambda a, b, c, d: (Fraction(a - b + c + d) / 2, Fraction(b - a + c + d) / 2),
        "((a-b+c+d) + (b-a+c+d)*sqrt(m))/2",
    ),
    CaseFormula(_O, 5, 2, 0, "I_{e^{i(pi-t)},1}", lambda a, b, c, d: (a + b - d, d), "a+b-d + d*sqrt(m)"),
    CaseFormula(
        _O, 6, 2, 1, "I_{e^{i(pi-t)},e^{it}}",
        lambda a, b, c, d: (Fraction(a + b + c - d) / 2, Fraction(a + b - c + d) / 2),
        "((a+b+c-d) + (a+b-c+d)*sqrt(m))/2",
    ),
)


def cases_for(kind: RingKind) -> list[CaseFormula]:
    return [c for c in CASE_TABLE if c.kind is kind]


def case_for(kind: RingKind, u: int, v: int) -> CaseFormula:
    for c in CASE_TABLE:
        if c.kind is kind and c.u == u and c.v == v:
            return c
    raise KeyError((kind, u, v))
