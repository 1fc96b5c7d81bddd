"""Floating-point origami closure for arbitrary fold angles.

Non-authoritative: everything provable exactly lives in the exact
modules.  This backend exists for direction sets that are not
representable in one quadratic field, e.g. the cyclotomic sets
U_n = {k*pi/n}.  Point identity is decided by an epsilon test on a
spatial hash grid, which is a heuristic; the defaults are tuned for
desk-scale runs (a few generations, coordinates below ~1e3).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .quadfield import Direction

DEFAULT_DEDUP_EPSILON = 1e-8
DEFAULT_MATCH_EPSILON = 1e-6


class NearParallel(ValueError):
    pass


class ApproxBudgetExceeded(RuntimeError):
    def __init__(self, partial: "ApproxPointSet", generation: int, attempted: int, limit: int):
        super().__init__(f"generation {generation} would hold {attempted} points, over the budget of {limit}")
        self.partial = partial
        self.generation = generation
        self.attempted = attempted
        self.limit = limit


@dataclass(frozen=True)
class ApproxPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __complex__(self):
        return complex(self.x, self.y)


def _reduce_angle(a: float) -> float:
    r = math.fmod(a, math.pi)
    if r < 0:
        r += math.pi
    return r


@dataclass(frozen=True)
class ApproxConfig:
    angles: tuple[float, ...]
    seeds: tuple[ApproxPoint, ...] = ()
    generations: int = 3
    dedup_epsilon: float = DEFAULT_DEDUP_EPSILON
    match_epsilon: float = DEFAULT_MATCH_EPSILON
    max_points: int = 200_000

    def __post_init__(self):
        angles = tuple(_reduce_angle(float(a)) for a in self.angles)
        if len(angles) < 2:
            raise ValueError("at least two angles are required")
        if self.dedup_epsilon <= 0 or self.match_epsilon <= 0:
            raise ValueError("epsilons must be positive")
        for i in range(len(angles)):
            for j in range(i + 1, len(angles)):
                if abs(math.sin(angles[i] - angles[j])) <= self.dedup_epsilon:
                    raise ValueError(f"angles {angles[i]} and {angles[j]} coincide modulo pi")
        if self.generations < 0 or self.max_points <= 0:
            raise ValueError("generations must be non-negative and max_points positive")
        seeds = tuple(self.seeds) if self.seeds else (ApproxPoint(0.0, 0.0), ApproxPoint(1.0, 0.0))
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "seeds", seeds)


def approx_intersect(a1: float, a2: float, p: ApproxPoint, q: ApproxPoint, eps: float = DEFAULT_DEDUP_EPSILON) -> ApproxPoint:
    """Meet of the line through ``p`` at angle ``a1`` with the line through ``q`` at ``a2``."""
    ux, uy = math.cos(a1), math.sin(a1)
    vx, vy = math.cos(a2), math.sin(a2)
    d = ux * vy - uy * vx
    if abs(d) <= eps:
        raise NearParallel(f"angles {a1} and {a2} are parallel within {eps}")
    alpha = ux * p.y - uy * p.x
    beta = vx * q.y - vy * q.x
    return ApproxPoint((alpha * vx - beta * ux) / d, (alpha * vy - beta * uy) / d)


class _Grid:
    """Epsilon point set: hash on cells of size eps, probe the 3x3 neighbourhood."""

    def __init__(self, eps: float):
        self.eps = eps
        self.cells: dict[tuple[int, int], list[tuple[float, float]]] = {}

    def add(self, x: float, y: float) -> bool:
        eps = self.eps
        cx, cy = math.floor(x / eps), math.floor(y / eps)
        for i in (cx - 1, cx, cx + 1):
            for j in (cy - 1, cy, cy + 1):
                for px, py in self.cells.get((i, j), ()):
                    if abs(px - x) <= eps and abs(py - y) <= eps:
                        return False
        self.cells.setdefault((cx, cy), []).append((x, y))
        return True


def _distinct_offsets(values: np.ndarray, eps: float) -> np.ndarray:
    v = np.sort(values)
    if v.size == 0:
        return v
    keep = np.ones(v.size, dtype=bool)
    keep[1:] = np.diff(v) > eps
    return v[keep]


@dataclass(frozen=True)
class ApproxPointSet:
    """Points in canonical order (generation, x, y) with their generations."""

    points: tuple[ApproxPoint, ...]
    generations: tuple[int, ...]

    def __len__(self):
        return len(self.points)

    @property
    def max_generation(self) -> int:
        return self.generations[-1] if self.generations else 0

    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.generations:
            out[g] = out.get(g, 0) + 1
        return out


def _canonical(xs, ys, gens) -> ApproxPointSet:
    order = sorted(range(len(xs)), key=lambda i: (gens[i], xs[i], ys[i]))
    return ApproxPointSet(
        tuple(ApproxPoint(float(xs[i]), float(ys[i])) for i in order),
        tuple(gens[i] for i in order),
    )


def approx_closure(cfg: ApproxConfig) -> ApproxPointSet:
    """Generational closure with the same semantics as the exact engine."""
    eps = cfg.dedup_epsilon
    grid = _Grid(eps)
    xs: list[float] = []
    ys: list[float] = []
    gens: list[int] = []
    for s in cfg.seeds:
        if grid.add(s.x, s.y):
            xs.append(s.x)
            ys.append(s.y)
            gens.append(0)
    units = [(math.cos(a), math.sin(a)) for a in cfg.angles]
    for g in range(1, cfg.generations + 1):
        X = np.asarray(xs)
        Y = np.asarray(ys)
        offsets = [_distinct_offsets(ux * Y - uy * X, eps) for ux, uy in units]
        cand = []
        for i in range(len(units)):
            for j in range(i + 1, len(units)):
                (ux, uy), (vx, vy) = units[i], units[j]
                d = ux * vy - uy * vx
                al = offsets[i][:, None]
                be = offsets[j][None, :]
                zx = (al * vx - be * ux) / d
                zy = (al * vy - be * uy) / d
                cand.append(np.stack([zx.ravel(), zy.ravel()], axis=1))
        cand_all = np.concatenate(cand) if cand else np.empty((0, 2))
        order = np.lexsort((cand_all[:, 1], cand_all[:, 0]))
        added = 0
        for x, y in cand_all[order].tolist():
            if grid.add(x, y):
                xs.append(x)
                ys.append(y)
                gens.append(g)
                added += 1
        if len(xs) > cfg.max_points:
            n_keep = len(xs) - added
            partial = _canonical(xs[:n_keep], ys[:n_keep], gens[:n_keep])
            raise ApproxBudgetExceeded(partial, g, len(xs), cfg.max_points)
        if added == 0:
            break
    return _canonical(xs, ys, gens)


def run_approx(cfg: ApproxConfig) -> list[ApproxPoint]:
    return list(approx_closure(cfg).points)


# -- direction sets and lattice checks ----------------------------------------

def cyclotomic_angles(n: int) -> tuple[float, ...]:
    """Angles of U_n = <e^{i pi/n}> modulo +-1."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(k * math.pi / n for k in range(n))


def angles_for_directions(dirs: list[Direction]) -> tuple[float, ...]:
    """Fold angles in [0, pi) of exact directions, embedding sqrt(m) as i*sqrt(|m|)."""
    out = []
    for d in dirs:
        z = d.rep.to_complex()
        out.append(_reduce_angle(math.atan2(z.imag, z.real)))
    return tuple(out)


def lattice_residual(p: ApproxPoint, w: complex) -> float:
    """Distance from ``p`` to the nearest point of the lattice Z + Z*w (Im w != 0)."""
    b = p.y / w.imag
    a = p.x - b * w.real
    best = math.inf
    for da in (math.floor(a), math.ceil(a)):
        for db in (math.floor(b), math.ceil(b)):
            z = complex(da + db * w.real, db * w.imag)
            best = min(best, abs(complex(p.x, p.y) - z))
    return best


EISENSTEIN_UNIT = complex(0.5, math.sqrt(3) / 2)


def eisenstein_residual(p: ApproxPoint) -> float:
    return lattice_residual(p, EISENSTEIN_UNIT)


def grid_residual(p: ApproxPoint, denom: int) -> float:
    """Distance to the nearest point of (1/denom)*Z[i]."""
    rx = p.x * denom
    ry = p.y * denom
    return math.hypot(rx - round(rx), ry - round(ry)) / denom


def dump_tsv(ps: ApproxPointSet, trailer: str | None = None) -> str:
    """``x y generation`` per line, tab separated, 17 significant digits."""
    out = io.StringIO()
    for p, g in zip(ps.points, ps.generations):
        out.write(f"{p.x:.17g}\t{p.y:.17g}\t{g}\n")
    if trailer:
        out.write(f"# {trailer}\n")
    return out.getvalue()


def load_tsv(text: str) -> ApproxPointSet:
    pts, gens = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected 3 tab-separated fields")
        pts.append(ApproxPoint(float(fields[0]), float(fields[1])))
        gens.append(int(fields[2]))
    return ApproxPointSet(tuple(pts), tuple(gens))
