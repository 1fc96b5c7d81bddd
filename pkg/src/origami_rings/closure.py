"""Generation-by-generation closure of a seed set under fold intersections.

Generation ``g+1`` adds every intersection of two folds, along distinct
directions, through points of the cumulative set after generation ``g``.
A point's generation index is the first round in which it appears (its
origami distance from the seeds).

The engine never enumerates point pairs.  A fold is determined by its
direction and one integer key, so each direction contributes its set of
distinct folds, and the new points of a round are the images of
(fold along u) x (fold along v) for each unordered pair of directions.
Symmetry of the operator makes unordered pairs sufficient.
"""

from __future__ import annotations

import bisect
import io
import math
from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import kernel
from .quadfield import Direction, FieldTag, QuadElem

DEFAULT_MAX_POINTS = 200_000
DEFAULT_MAX_GENERATIONS = 6


class BudgetExceeded(RuntimeError):
    """The next generation would exceed ``max_points``.

    ``partial`` is the last complete point set; ``generation`` is the
    generation that could not be completed.
    """

    def __init__(self, partial: "PointSet", generation: int, attempted: int, limit: int):
        super().__init__(
            f"generation {generation} would hold {attempted} points, over the budget of {limit}"
        )
        self.partial = partial
        self.generation = generation
        self.attempted = attempted
        self.limit = limit


@dataclass(frozen=True)
class OrigamiConfig:
    tag: FieldTag
    dirs: tuple[Direction, ...]
    seeds: tuple[QuadElem, ...] = ()
    max_generations: int = DEFAULT_MAX_GENERATIONS
    max_points: int = DEFAULT_MAX_POINTS
    #: pair only folds through newly added points with the rest (same result, less work)
    incremental: bool = False
    #: threads used to split the fold-pair space; results are merged canonically
    workers: int = 1
    backend: str | None = field(default=None, compare=False)

    def __post_init__(self):
        dirs = tuple(self.dirs)
        if len(dirs) < 2:
            raise ValueError("at least two directions are required")
        if len(set(dirs)) != len(dirs):
            raise ValueError("directions must be pairwise distinct")
        if any(d.tag != self.tag for d in dirs):
            raise ValueError("all directions must belong to the configured field")
        seeds = tuple(self.seeds) if self.seeds else (self.tag.zero, self.tag.one)
        if any(s.tag != self.tag for s in seeds):
            raise ValueError("all seeds must belong to the configured field")
        seeds = tuple(dict.fromkeys(seeds))
        if self.max_generations < 0:
            raise ValueError("max_generations must be non-negative")
        if self.max_points <= 0:
            raise ValueError("max_points must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        object.__setattr__(self, "dirs", dirs)
        object.__setattr__(self, "seeds", seeds)


class PointSet(Mapping):
    """Immutable map from point to generation index.

    Stored as integer numerators ``xs``, ``ys`` over the minimal common
    denominator ``den``, ordered by (generation, re, co).  Field elements
    are only built when iterated, so large sets stay cheap.
    """

    __slots__ = ("tag", "den", "xs", "ys", "gens", "_index", "_elems")

    def __init__(self, tag: FieldTag, den: int, xs: list, ys: list, gens: list):
        self.tag = tag
        self.den = den
        self.xs = xs
        self.ys = ys
        self.gens = gens
        self._index = None
        self._elems = None

    @classmethod
    def from_mapping(cls, tag: FieldTag, generations: Mapping[QuadElem, int]) -> "PointSet":
        den = 1
        for z, g in generations.items():
            if z.tag != tag:
                raise ValueError(f"point {z} is not in {tag}")
            if g < 0:
                raise ValueError("generation indices are non-negative")
            den = math.lcm(den, z.re.denominator, z.co.denominator)
        rows = sorted(
            (g, z.re.numerator * (den // z.re.denominator), z.co.numerator * (den // z.co.denominator))
            for z, g in generations.items()
        )
        return cls(tag, den, [r[1] for r in rows], [r[2] for r in rows], [r[0] for r in rows])

    @classmethod
    def from_seeds(cls, tag: FieldTag, seeds) -> "PointSet":
        return cls.from_mapping(tag, {s: 0 for s in seeds})

    def _lookup(self) -> dict:
        if self._index is None:
            self._index = dict(zip(zip(self.xs, self.ys), self.gens))
        return self._index

    def _key(self, z):
        if not isinstance(z, QuadElem) or z.tag != self.tag:
            return None
        x, y = z.re * self.den, z.co * self.den
        if x.denominator != 1 or y.denominator != 1:
            return None
        return (x.numerator, y.numerator)

    def __getitem__(self, z):
        key = self._key(z)
        if key is None or key not in self._lookup():
            raise KeyError(z)
        return self._lookup()[key]

    def __contains__(self, z):
        key = self._key(z)
        return key is not None and key in self._lookup()

    def elements(self) -> list[QuadElem]:
        if self._elems is None:
            den, tag = self.den, self.tag
            self._elems = [QuadElem(Fraction(x, den), Fraction(y, den), tag) for x, y in zip(self.xs, self.ys)]
        return self._elems

    def __iter__(self) -> Iterator[QuadElem]:
        return iter(self.elements())

    def __len__(self):
        return len(self.xs)

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return (
                self.tag == other.tag
                and self.den == other.den
                and self.gens == other.gens
                and self.xs == other.xs
                and self.ys == other.ys
            )
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"PointSet({self.tag}, {len(self)} points, max generation {self.max_generation})"

    @property
    def max_generation(self) -> int:
        return self.gens[-1] if self.gens else 0

    def values(self):
        return list(self.gens)

    def items(self):
        return list(zip(self.elements(), self.gens))

    def points(self) -> frozenset[QuadElem]:
        return frozenset(self.elements())

    def sorted_items(self) -> list[tuple[QuadElem, int]]:
        """Canonical order: by generation, then by (re, co)."""
        return list(zip(self.elements(), self.gens))


def expand_generation(ps: PointSet, cfg: OrigamiConfig) -> PointSet:
    """One closure round over the whole cumulative set."""
    if not ps:
        raise ValueError("cannot expand an empty point set")
    if ps.tag != cfg.tag:
        raise ValueError("point set and configuration live in different fields")
    lat = ps
    newest = ps.max_generation
    g_next = newest + 1

    keys = {}
    fresh = {}
    if cfg.incremental:
        n_old = bisect.bisect_left(ps.gens, newest)
        old_xs = lat.xs[:n_old]
        old_ys = lat.ys[:n_old]
    for d in cfg.dirs:
        keys[d] = kernel.line_keys(lat.xs, lat.ys, d.re, d.co, cfg.backend)
        if cfg.incremental:
            old = set(kernel.line_keys(old_xs, old_ys, d.re, d.co, cfg.backend))
            fresh[d] = [k for k in keys[d] if k not in old]

    pairs = list(combinations(cfg.dirs, 2))
    dets = {}
    for u, v in pairs:
        dets[u, v] = u.re * v.co - u.co * v.re
        # Distinct canonical primitive vectors are never parallel.
        assert dets[u, v] != 0
    scale = math.lcm(*(abs(D) for D in dets.values()))

    tasks = []
    for u, v in pairs:
        mult = scale // dets[u, v]
        if cfg.incremental and newest > 0:
            fresh_u = set(fresh[u])
            old_u = [k for k in keys[u] if k not in fresh_u]
            if fresh[u]:
                tasks.append((fresh[u], keys[v], u.re, u.co, v.re, v.co, mult))
            if fresh[v] and old_u:
                tasks.append((old_u, fresh[v], u.re, u.co, v.re, v.co, mult))
        else:
            tasks.append((keys[u], keys[v], u.re, u.co, v.re, v.co, mult))

    new_xs, new_ys = kernel.new_intersections(lat.xs, lat.ys, scale, tasks, cfg.backend, cfg.workers)

    total = len(ps) + len(new_xs)
    if total > cfg.max_points:
        raise BudgetExceeded(ps, g_next, total, cfg.max_points)

    den = lat.den * scale
    if scale == 1:
        xs = lat.xs + new_xs
        ys = lat.ys + new_ys
    else:
        xs = [x * scale for x in lat.xs] + new_xs
        ys = [y * scale for y in lat.ys] + new_ys
    g = math.gcd(den, math.gcd(*xs), math.gcd(*ys))
    if g > 1:
        xs = [x // g for x in xs]
        ys = [y // g for y in ys]
        den //= g
    gens = ps.gens + [g_next] * len(new_xs)
    return PointSet(cfg.tag, den, xs, ys, gens)


def run_closure(cfg: OrigamiConfig) -> PointSet:
    """Expand from the seeds until a fixed point or ``max_generations``.

    Raises :class:`BudgetExceeded` carrying the last complete set.
    """
    ps = PointSet.from_seeds(cfg.tag, cfg.seeds)
    for _ in range(cfg.max_generations):
        nxt = expand_generation(ps, cfg)
        if len(nxt) == len(ps):
            break
        ps = nxt
    return ps


def distance_histogram(ps: Mapping) -> dict[int, int]:
    """Number of points per generation index."""
    return dict(sorted(Counter(ps.values()).items()))


# -- TSV ---------------------------------------------------------------------

def dump_tsv(ps: PointSet, trailer: str | None = None) -> str:
    """``re_num re_den co_num co_den generation`` per line, tab separated.

    A leading ``# m=<m>`` comment records the field; ``trailer`` (if given)
    is appended as a final comment line.
    """
    out = io.StringIO()
    out.write(f"# m={ps.tag.m}\n")
    den = ps.den
    gcd = math.gcd
    for x, y, g in zip(ps.xs, ps.ys, ps.gens):
        gx, gy = gcd(x, den), gcd(y, den)
        out.write(f"{x // gx}\t{den // gx}\t{y // gy}\t{den // gy}\t{g}\n")
    if trailer:
        out.write(f"# {trailer}\n")
    return out.getvalue()


def load_tsv(text: str, tag: FieldTag | None = None) -> PointSet:
    gen = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("m="):
                file_tag = FieldTag(int(body[2:]))
                if tag is not None and tag != file_tag:
                    raise ValueError(f"TSV is for m={file_tag.m}, expected m={tag.m}")
                tag = file_tag
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise ValueError(f"line {lineno}: expected 5 tab-separated fields")
        rn, rd, cn, cd, g = map(int, fields)
        if tag is None:
            raise ValueError("TSV has no m= header and no field was given")
        gen[QuadElem(Fraction(rn, rd), Fraction(cn, cd), tag)] = g
    if tag is None:
        raise ValueError("empty TSV with no field")
    return PointSet.from_mapping(tag, gen)
