"""The two-line intersection operator over exact field elements."""

from __future__ import annotations

from dataclasses import dataclass

from .quadfield import Direction, FieldMismatch, QuadElem, bracket


class ParallelDirections(ValueError):
    """The two fold directions coincide, so the lines do not meet in one point."""


@dataclass(frozen=True)
class Line:
    """The fold ``{through + r*dir : r real}``."""

    through: QuadElem
    dir: Direction

    def contains(self, z: QuadElem) -> bool:
        return bracket(self.dir.rep, z - self.through) == 0


def same_line(l1: Line, l2: Line) -> bool:
    if l1.through.tag != l2.through.tag:
        raise FieldMismatch("lines live in different fields")
    return l1.dir == l2.dir and bracket(l1.dir.rep, l1.through - l2.through) == 0


def intersect(u: Direction, v: Direction, p: QuadElem, q: QuadElem) -> QuadElem:
    """Meet of the fold through ``p`` along ``u`` and the fold through ``q`` along ``v``.

    Computes ``[u,p]/[u,v] * v + [v,q]/[v,u] * u``.  The result is unchanged
    by nonzero real rescaling of ``u`` or ``v``, which is why primitive
    integer directions can stand in for points of the unit circle.
    """
    uu, vv = u.rep, v.rep
    if p.tag != uu.tag or q.tag != uu.tag or vv.tag != uu.tag:
        raise FieldMismatch("intersect arguments live in different fields")
    uv = bracket(uu, vv)
    if uv == 0:
        raise ParallelDirections(f"directions {u} and {v} are parallel")
    return vv * (bracket(uu, p) / uv) + uu * (bracket(vv, q) / -uv)
