"""Origami rings: iterated fold intersections over imaginary quadratic fields.

Exact arithmetic throughout (``quadfield``, ``intersect``, ``closure``,
``targets``, ``planner``); ``approx`` is a floating-point backend for
direction sets outside a single quadratic field.
"""

from .closure import BudgetExceeded, OrigamiConfig, PointSet, distance_histogram, expand_generation, run_closure
from .intersect import Line, ParallelDirections, intersect, same_line
from .kernel import BACKEND
from .planner import HintMismatch, NotAnInteger, Trace, TraceStep, plan, replay
from .quadfield import Direction, FieldTag, QuadElem, Rational, bracket, canonical_direction, parse_elem
from .targets import RingClass, RingKind, direction_set, is_integer, ring_class

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "Direction",
    "FieldTag",
    "HintMismatch",
    "Line",
    "NotAnInteger",
    "OrigamiConfig",
    "ParallelDirections",
    "PointSet",
    "QuadElem",
    "Rational",
    "RingClass",
    "RingKind",
    "Trace",
    "TraceStep",
    "bracket",
    "canonical_direction",
    "direction_set",
    "distance_histogram",
    "expand_generation",
    "intersect",
    "is_integer",
    "parse_elem",
    "plan",
    "replay",
    "ring_class",
    "run_closure",
    "same_line",
]
