import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_rings import kernel
from origami_rings.closure import OrigamiConfig, run_closure
from origami_rings.quadfield import FieldTag
from origami_rings.targets import direction_set

small = st.integers(-50, 50)
points = st.lists(st.tuples(small, small), min_size=1, max_size=12, unique=True)
task = st.tuples(
    st.lists(small, min_size=1, max_size=6, unique=True),
    st.lists(small, min_size=1, max_size=6, unique=True),
    st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
    st.integers(-4, 4).filter(bool),
)


def _reference(xs, ys, scale, tasks):
    existing = {(scale * x, scale * y) for x, y in zip(xs, ys)}
    out = set()
    for alphas, betas, ur, uc, vr, vc, mult in tasks:
        for a in alphas:
            for b in betas:
                z = (mult * (a * vr - b * ur), mult * (a * vc - b * uc))
                if z not in existing:
                    out.add(z)
    out = sorted(out)
    return [z[0] for z in out], [z[1] for z in out]


@settings(max_examples=200, deadline=None)
@given(points, st.integers(1, 5), st.lists(task, min_size=1, max_size=3), st.integers(1, 3))
def test_backends_agree(pts, scale, tasks, workers):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    want = _reference(xs, ys, scale, tasks)
    for b in kernel.BACKENDS:
        got = kernel.new_intersections(xs, ys, scale, tasks, backend=b, workers=workers)
        assert (list(got[0]), list(got[1])) == want


@settings(max_examples=100, deadline=None)
@given(points, st.integers(-4, 4), st.integers(-4, 4))
def test_line_keys_agree(pts, dr, dc):
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    want = sorted({dr * y - dc * x for x, y in pts})
    for b in kernel.BACKENDS:
        assert list(kernel.line_keys(xs, ys, dr, dc, backend=b)) == want


def test_overflow_falls_back_to_big_ints():
    big = 1 << 70
    xs, ys = [0, big], [0, 1]
    tasks = [([big, 1], [3], 1, 0, 0, 1, 1)]
    want = _reference(xs, ys, 1, tasks)
    for b in kernel.BACKENDS:
        got = kernel.new_intersections(xs, ys, 1, tasks, backend=b)
        assert (list(got[0]), list(got[1])) == want
        assert list(kernel.line_keys(xs, ys, 1, 1, backend=b)) == sorted({y - x for x, y in zip(xs, ys)})


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernel.new_intersections([0], [0], 1, [], backend="fortran")


def test_default_backend_is_listed():
    assert kernel.BACKEND in kernel.BACKENDS


def test_closure_identical_across_backends():
    tag = FieldTag(-7)
    runs = [
        run_closure(OrigamiConfig(tag, tuple(direction_set(tag)), max_generations=6, backend=b))
        for b in kernel.BACKENDS
    ]
    assert all((r.xs, r.ys, r.gens, r.den) == (runs[0].xs, runs[0].ys, runs[0].gens, runs[0].den) for r in runs)


def test_benchmark_script_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernel.py"
    spec = importlib.util.spec_from_file_location("bench_kernel", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--generations", "3", "4", "--repeat", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()[2:]
    assert [r.split("\t")[1] for r in rows] == ["20", "60"]
