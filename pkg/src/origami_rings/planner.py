"""Explicit constructions of ring-of-integers points from the seeds {0, 1}.

Every move starts from an *adjacent pair*: ``(n + k*s, n+1 + k*s)`` in
Z[s] (s = sqrt(m), m = 2, 3 mod 4) or ``((n + k*s)/2, (n+2 + k*s)/2)`` in
the half-integer ring (m = 1 mod 4), and returns the translated pair.  The
moves are compositions of the nested intersections used in the induction
proof; each step's expected value is computed from the closed-form case
table, and :func:`replay` re-derives it with the generic operator.

Route: vertical moves first, then horizontal ones, so the trace length is
linear in the target's coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .intersect import intersect
from .quadfield import Direction, FieldTag, QuadElem, canonical_direction, format_elem, parse_elem
from .targets import RingKind, case_for, direction_set, is_integer, ring_class


class PlannerError(ValueError):
    pass


class NotAnInteger(PlannerError):
    """The target is not in the ring of integers, so no trace exists."""


class InvalidPair(PlannerError):
    """A move was asked to start from something other than an adjacent pair."""


class TraceError(PlannerError):
    """A trace is malformed or does not construct its target."""


class HintMismatch(TraceError):
    def __init__(self, step: int, expected: QuadElem, got: QuadElem):
        super().__init__(f"step {step}: hint {format_elem(expected)} but intersection is {format_elem(got)}")
        self.step = step
        self.expected = expected
        self.got = got


# References into the growing point list: 0 and 1 are the seeds, 2 + j is step j.
def seed_ref(i: int) -> int:
    return i


def step_ref(j: int) -> int:
    return j + 2


@dataclass(frozen=True)
class TraceStep:
    u: int
    v: int
    p: int
    q: int
    result_hint: QuadElem


@dataclass(frozen=True)
class Trace:
    tag: FieldTag
    dirs: tuple[Direction, ...]
    steps: tuple[TraceStep, ...]
    target: QuadElem

    def __len__(self):
        return len(self.steps)


# Direction indices in the order returned by direction_set().
_ONE, _I, _E = 0, 1, 2  # TwoThreeMod4: 1, i, e^{i theta}
_E1, _F1 = 1, 2  # OneMod4: e^{i theta}, e^{i(pi - theta)}


class TraceBuilder:
    """Accumulates steps over a fixed pair of starting points."""

    def __init__(self, tag: FieldTag, seeds: tuple[QuadElem, QuadElem] | None = None):
        self.tag = tag
        self.kind = ring_class(tag).kind
        self.dirs = tuple(direction_set(tag))
        self.points = list(seeds) if seeds is not None else [tag.zero, tag.one]
        self.steps: list[TraceStep] = []

    def step(self, u: int, v: int, p: int, q: int) -> int:
        hint = case_for(self.kind, u, v).apply(self.points[p], self.points[q])
        assert is_integer(hint), hint
        self.steps.append(TraceStep(u, v, p, q, hint))
        self.points.append(hint)
        return len(self.points) - 1

    def point(self, ref: int) -> QuadElem:
        return self.points[ref]

    def check_pair(self, pair: tuple[int, int]) -> None:
        p0, p1 = self.points[pair[0]], self.points[pair[1]]
        if not is_integer(p0) or p1 - p0 != self.tag.one:
            raise InvalidPair(f"({format_elem(p0)}, {format_elem(p1)}) is not an adjacent pair")

    def trace(self, target: QuadElem) -> Trace:
        return Trace(self.tag, self.dirs, tuple(self.steps), target)

    def pruned_trace(self, ref: int) -> Trace:
        """Only the steps ``ref`` depends on, renumbered in original order."""
        need = set()
        stack = [ref]
        while stack:
            r = stack.pop()
            if r < 2 or r in need:
                continue
            need.add(r)
            st = self.steps[r - 2]
            stack.extend((st.p, st.q))
        remap = {0: 0, 1: 1}
        steps = []
        for r in sorted(need):
            st = self.steps[r - 2]
            remap[r] = step_ref(len(steps))
            steps.append(TraceStep(st.u, st.v, remap[st.p], remap[st.q], st.result_hint))
        return Trace(self.tag, self.dirs, tuple(steps), self.point(ref))


# -- moves ---------------------------------------------------------------
#
# Each takes a builder and a pair of point references and returns the
# references of the translated pair.

def _right_23(b: TraceBuilder, pair):
    p0, p1 = pair
    a = b.step(_E, _I, p0, p1)  # n+1 + (k+1)s
    c = b.step(_ONE, _E, a, p1)  # n+2 + (k+1)s
    d = b.step(_I, _ONE, c, p1)  # n+2 + k s
    return p1, d


def _left_23(b: TraceBuilder, pair):
    p0, p1 = pair
    a = b.step(_I, _E, p0, p1)  # n + (k-1)s
    c = b.step(_ONE, _E, a, p0)  # n-1 + (k-1)s
    d = b.step(_I, _ONE, c, p0)  # n-1 + k s
    return d, p0


def _up_23(b: TraceBuilder, pair):
    p0, p1 = pair
    a = b.step(_E, _I, p0, p1)  # n+1 + (k+1)s
    c = b.step(_I, _ONE, p0, a)  # n + (k+1)s
    return c, a


def _down_23(b: TraceBuilder, pair):
    p0, p1 = pair
    a = b.step(_I, _E, p0, p1)  # n + (k-1)s
    c = b.step(_I, _ONE, p1, a)  # n+1 + (k-1)s
    return a, c


# For m = 1 mod 4 the points are written (n + k s)/2.  The up point
# (n+1 + (k+1)s)/2 is I_{e^{it}, e^{i(pi-t)}}(pair); the reversed order
# gives the down point (n+1 + (k-1)s)/2.

def _up_1(b: TraceBuilder, pair):
    p0, p1 = pair
    u0 = b.step(_E1, _F1, p0, p1)  # (n+1 + (k+1)s)/2
    u1 = b.step(_ONE, _E1, u0, p1)  # (n+3 + (k+1)s)/2
    return u0, u1


def _right_1(b: TraceBuilder, pair):
    p0, p1 = pair
    u0 = b.step(_E1, _F1, p0, p1)  # (n+1 + (k+1)s)/2
    w = b.step(_ONE, _E1, u0, p1)  # (n+3 + (k+1)s)/2
    p2 = b.step(_F1, _ONE, w, p1)  # (n+4 + k s)/2
    return p1, p2


def _left_1(b: TraceBuilder, pair):
    p0, p1 = pair
    u0 = b.step(_E1, _F1, p0, p1)  # (n+1 + (k+1)s)/2
    w = b.step(_ONE, _F1, u0, p0)  # (n-1 + (k+1)s)/2
    pm = b.step(_E1, _ONE, w, p0)  # (n-2 + k s)/2
    return pm, p0


def _down_1(b: TraceBuilder, pair):
    p0, p1 = pair
    d0 = b.step(_F1, _E1, p0, p1)  # (n+1 + (k-1)s)/2
    _, p2 = _right_1(b, pair)
    d1 = b.step(_F1, _E1, p1, p2)  # (n+3 + (k-1)s)/2
    return d0, d1


_MOVES = {
    RingKind.TWO_THREE_MOD_4: {"right": _right_23, "left": _left_23, "up": _up_23, "down": _down_23},
    RingKind.ONE_MOD_4: {"right": _right_1, "left": _left_1, "up": _up_1, "down": _down_1},
}


def apply_move(b: TraceBuilder, pair: tuple[int, int], move: str) -> tuple[int, int]:
    b.check_pair(pair)
    return _MOVES[b.kind][move](b, pair)


def _move(tag: FieldTag, pair: tuple[QuadElem, QuadElem], move: str):
    b = TraceBuilder(tag, pair)
    new = apply_move(b, (0, 1), move)
    return b.steps, (b.point(new[0]), b.point(new[1]))


def move_right(tag: FieldTag, pair: tuple[QuadElem, QuadElem]):
    """Steps over ``pair`` (refs 0 and 1 are the pair itself) and the pair shifted right."""
    return _move(tag, pair, "right")


def move_left(tag: FieldTag, pair: tuple[QuadElem, QuadElem]):
    return _move(tag, pair, "left")


def move_up(tag: FieldTag, pair: tuple[QuadElem, QuadElem]):
    return _move(tag, pair, "up")


def move_down(tag: FieldTag, pair: tuple[QuadElem, QuadElem]):
    return _move(tag, pair, "down")


def plan(tag: FieldTag, target: QuadElem) -> Trace:
    """A trace from {0, 1} whose constructed points include ``target``."""
    if target.tag != tag:
        raise PlannerError(f"target {target} is not in {tag}")
    if not is_integer(target):
        raise NotAnInteger(f"{format_elem(target)} is not an algebraic integer of Q({tag})")
    b = TraceBuilder(tag)
    if target in (tag.zero, tag.one):
        return b.trace(target)
    pair = (seed_ref(0), seed_ref(1))
    if b.kind is RingKind.TWO_THREE_MOD_4:
        horiz, vert = int(target.re), int(target.co)
        for _ in range(abs(vert)):
            pair = apply_move(b, pair, "up" if vert > 0 else "down")
        for _ in range(abs(horiz)):
            pair = apply_move(b, pair, "right" if horiz > 0 else "left")
    else:
        a, k = int(2 * target.re), int(2 * target.co)
        for _ in range(abs(k)):
            pair = apply_move(b, pair, "up" if k > 0 else "down")
        # each vertical move shifted the real numerator by one
        rest = a - abs(k)
        assert rest % 2 == 0
        for _ in range(abs(rest) // 2):
            pair = apply_move(b, pair, "right" if rest > 0 else "left")
    assert b.point(pair[0]) == target
    return b.pruned_trace(pair[0])


def replay(trace: Trace, check_integral: bool = True) -> QuadElem:
    """Re-execute every step with the generic operator and return the target.

    Raises :class:`HintMismatch` on the first step whose intersection differs
    from its recorded hint, :class:`TraceError` for malformed traces.
    """
    tag = trace.tag
    points = [tag.zero, tag.one]
    nd = len(trace.dirs)
    for i, st in enumerate(trace.steps):
        if not (0 <= st.u < nd and 0 <= st.v < nd):
            raise TraceError(f"step {i}: direction index out of range")
        if st.u == st.v:
            raise TraceError(f"step {i}: u and v must differ")
        if not (0 <= st.p < len(points) and 0 <= st.q < len(points)):
            raise TraceError(f"step {i}: reference to a point not yet constructed")
        z = intersect(trace.dirs[st.u], trace.dirs[st.v], points[st.p], points[st.q])
        if z != st.result_hint:
            raise HintMismatch(i, st.result_hint, z)
        if check_integral and not is_integer(z):
            raise TraceError(f"step {i}: {format_elem(z)} is not an algebraic integer")
        points.append(z)
    if trace.target not in points:
        raise TraceError(f"target {format_elem(trace.target)} is not among the constructed points")
    return trace.target


# -- text format -------------------------------------------------------------

def _format_ref(ref: int) -> str:
    return f"seed:{ref}" if ref < 2 else f"step:{ref - 2}"


def _parse_ref(text: str) -> int:
    kind, _, idx = text.partition(":")
    if kind == "seed" and idx in ("0", "1"):
        return int(idx)
    if kind == "step" and idx.isdigit():
        return int(idx) + 2
    raise TraceError(f"bad point reference {text!r}")


def dump_trace(trace: Trace) -> str:
    lines = [
        f"m={trace.tag.m}",
        "dirs=" + " ".join(f"({d.re},{d.co})" for d in trace.dirs),
        f"target={format_elem(trace.target)}",
    ]
    for i, st in enumerate(trace.steps):
        lines.append(
            f"step {i}: u={st.u} v={st.v} p={_format_ref(st.p)} q={_format_ref(st.q)} "
            f"hint={format_elem(st.result_hint)}"
        )
    return "\n".join(lines) + "\n"


_STEP = re.compile(r"step (\d+): u=(\d+) v=(\d+) p=(\S+) q=(\S+) hint=(\S+)$")
_DIR = re.compile(r"\((-?\d+),(-?\d+)\)")


def load_trace(text: str) -> Trace:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        if len(lines) < 3 or not lines[0].startswith("m=") or not lines[1].startswith("dirs="):
            raise TraceError("trace header must be m=..., dirs=..., target=...")
        tag = FieldTag(int(lines[0][2:]))
        dirs = []
        for a, c in _DIR.findall(lines[1][5:]):
            d = canonical_direction(tag.elem(Fraction(int(a)), Fraction(int(c))))
            if (d.re, d.co) != (int(a), int(c)):
                raise TraceError(f"direction ({a},{c}) is not canonical")
            dirs.append(d)
        if not lines[2].startswith("target="):
            raise TraceError("missing target= line")
        target = parse_elem(lines[2][7:], tag)
        steps = []
        for j, ln in enumerate(lines[3:]):
            mt = _STEP.match(ln)
            if not mt or int(mt.group(1)) != j:
                raise TraceError(f"bad step line {ln!r}")
            steps.append(
                TraceStep(
                    int(mt.group(2)), int(mt.group(3)),
                    _parse_ref(mt.group(4)), _parse_ref(mt.group(5)),
                    parse_elem(mt.group(6), tag),
                )
            )
    except TraceError:
        raise
    except ValueError as exc:
        raise TraceError(str(exc)) from exc
    return Trace(tag, tuple(dirs), tuple(steps), target)
