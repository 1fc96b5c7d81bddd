import math

import numpy as np
import pytest

from origami_rings.approx import (
    ApproxBudgetExceeded,
    ApproxConfig,
    ApproxPoint,
    NearParallel,
    angles_for_directions,
    approx_closure,
    approx_intersect,
    cyclotomic_angles,
    dump_tsv,
    eisenstein_residual,
    grid_residual,
    lattice_residual,
    load_tsv,
    run_approx,
)
from origami_rings.closure import OrigamiConfig, run_closure
from origami_rings.quadfield import FieldTag
from origami_rings.targets import direction_set

from conftest import ALL_M


def _solve(a1, a2, p, q):
    a = np.array([[math.cos(a1), -math.cos(a2)], [math.sin(a1), -math.sin(a2)]])
    s, _ = np.linalg.solve(a, np.array([q.x - p.x, q.y - p.y]))
    return p.x + s * math.cos(a1), p.y + s * math.sin(a1)


def test_intersect_examples():
    z = approx_intersect(0, math.pi / 2, ApproxPoint(0, 3), ApproxPoint(5, 0))
    assert math.isclose(z.x, 5, abs_tol=1e-12) and math.isclose(z.y, 3, abs_tol=1e-12)
    p = ApproxPoint(1.5, -2.25)
    z = approx_intersect(0.3, 1.9, p, p)
    assert math.hypot(z.x - p.x, z.y - p.y) < 1e-12
    z = approx_intersect(0, math.pi / 4, ApproxPoint(0, 0), ApproxPoint(1, 0))
    x, y = _solve(0, math.pi / 4, ApproxPoint(0, 0), ApproxPoint(1, 0))
    assert math.hypot(z.x - x, z.y - y) < 1e-12
    assert math.hypot(z.x - 1, z.y) < 1e-12


def test_intersect_against_solver():
    rng = np.random.default_rng(5)
    for _ in range(500):
        a1, a2 = rng.uniform(0, math.pi, 2)
        if abs(math.sin(a1 - a2)) < 1e-3:
            continue
        p, q = ApproxPoint(*rng.uniform(-10, 10, 2)), ApproxPoint(*rng.uniform(-10, 10, 2))
        z = approx_intersect(a1, a2, p, q)
        x, y = _solve(a1, a2, p, q)
        assert math.hypot(z.x - x, z.y - y) < 1e-8


def test_near_parallel():
    with pytest.raises(NearParallel):
        approx_intersect(0.5, 0.5 + 1e-12, ApproxPoint(0, 0), ApproxPoint(1, 0))
    with pytest.raises(NearParallel):
        approx_intersect(0.0, math.pi, ApproxPoint(0, 0), ApproxPoint(1, 0))


def test_config_validation():
    with pytest.raises(ValueError):
        ApproxConfig((0.0,))
    with pytest.raises(ValueError):
        ApproxConfig((0.0, math.pi))
    with pytest.raises(ValueError):
        ApproxConfig((0.0, 1.0), dedup_epsilon=0)
    with pytest.raises(ValueError):
        ApproxPoint(float("nan"), 0)
    assert ApproxConfig((-math.pi / 2, 0.0)).angles[0] == pytest.approx(math.pi / 2)


def test_u3_eisenstein():
    ps = approx_closure(ApproxConfig(cyclotomic_angles(3), generations=4))
    assert len(ps) > 20
    assert max(eisenstein_residual(p) for p in ps.points) < 1e-6


def test_u4_inside_quarter_grid():
    ps = approx_closure(ApproxConfig(cyclotomic_angles(4), generations=3))
    assert ps.histogram() == {0: 2, 1: 6, 2: 31, 3: 238}
    assert max(grid_residual(p, 4) for p in ps.points) < 1e-9


def test_two_angles_terminate():
    ps = approx_closure(ApproxConfig((0.0, math.pi / 2), generations=10))
    assert ps.max_generation == 0 and len(ps) == 2
    ps = approx_closure(ApproxConfig((0.0, 1.0), seeds=(ApproxPoint(0, 0), ApproxPoint(1, 1)), generations=10))
    assert ps.max_generation == 1 and len(ps) == 4


@pytest.mark.parametrize("denom", (1, 2))
def test_epsilon_halving_stable(denom):
    angles = cyclotomic_angles(3) if denom == 1 else cyclotomic_angles(4)
    counts = {len(approx_closure(ApproxConfig(angles, generations=3, dedup_epsilon=e))) for e in (1e-8, 5e-9, 2.5e-9)}
    assert len(counts) == 1


def nearest_match(exact, approx_pts, tol):
    pts = np.array([[p.x, p.y] for p in approx_pts])
    used = np.zeros(len(pts), bool)
    worst = 0.0
    for z in exact:
        d = np.hypot(pts[:, 0] - z.real, pts[:, 1] - z.imag)
        i = int(np.argmin(d))
        if d[i] > tol or used[i]:
            return None
        used[i] = True
        worst = max(worst, float(d[i]))
    return worst if used.all() else None


@pytest.mark.parametrize("m", ALL_M)
def test_exact_approx_agreement(m):
    tag = FieldTag(m)
    dirs = direction_set(tag)
    exact = run_closure(OrigamiConfig(tag, tuple(dirs), max_generations=3))
    aps = approx_closure(ApproxConfig(angles_for_directions(dirs), generations=3))
    assert len(aps) == len(exact)
    worst = nearest_match([z.to_complex() for z in exact], aps.points, 1e-9)
    assert worst is not None and worst < 1e-9
    assert aps.histogram() == {0: 2, 1: 2, 2: 4, 3: 12}


def test_budget():
    with pytest.raises(ApproxBudgetExceeded) as info:
        approx_closure(ApproxConfig(cyclotomic_angles(3), generations=6, max_points=50))
    assert len(info.value.partial) <= 50


def test_tsv_roundtrip():
    ps = approx_closure(ApproxConfig(cyclotomic_angles(3), generations=3))
    text = dump_tsv(ps)
    back = load_tsv(text)
    assert back == ps
    assert dump_tsv(back) == text
    assert run_approx(ApproxConfig(cyclotomic_angles(3), generations=3)) == list(ps.points)


def test_lattice_residual():
    w = complex(0.5, math.sqrt(3) / 2)
    assert lattice_residual(ApproxPoint(2.5, math.sqrt(3) / 2), w) < 1e-12
    assert lattice_residual(ApproxPoint(0.5, 0), w) == pytest.approx(0.5)
    assert grid_residual(ApproxPoint(0.25, -0.75), 4) < 1e-15
