from fractions import Fraction

import pytest
from hypothesis import strategies as st

from origami_rings.kernel import BACKENDS
from origami_rings.quadfield import FieldTag, QuadElem, canonical_direction

TWO_THREE = (-1, -2, -5, -6)
ONE_MOD_4 = (-3, -7, -11, -15)
ALL_M = TWO_THREE + ONE_MOD_4

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**4)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def elems(tag):
    return st.builds(lambda a, b: QuadElem(a, b, tag), rationals, rationals)


def nonzero_elems(tag):
    return elems(tag).filter(bool)


def directions(tag):
    return nonzero_elems(tag).map(canonical_direction)


fields = st.sampled_from(ALL_M).map(FieldTag)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def brute_force_closure(tag, dirs, seeds, generations):
    """Point-pair enumeration with a Cramer's-rule line solve over (re, co)."""
    gen = {s: 0 for s in seeds}
    vecs = [(Fraction(d.re), Fraction(d.co)) for d in dirs]
    for g in range(1, generations + 1):
        pts = list(gen)
        new = {}
        for p in pts:
            for q in pts:
                for i, (ux, uy) in enumerate(vecs):
                    for j, (vx, vy) in enumerate(vecs):
                        if i == j:
                            continue
                        # p + s*u = q + t*v  <=>  s*u - t*v = q - p
                        det = ux * (-vy) - (-vx) * uy
                        if det == 0:
                            continue
                        rx, ry = q.re - p.re, q.co - p.co
                        s = (rx * (-vy) - (-vx) * ry) / det
                        z = QuadElem(p.re + s * ux, p.co + s * uy, tag)
                        if z not in gen:
                            new[z] = g
        if not new:
            break
        gen.update(new)
    return gen


def solve_lines_float(p, u, q, v):
    """Independent numeric meet of p + s*u and q + t*v (complex inputs) via numpy."""
    import numpy as np

    a = np.array([[u.real, -v.real], [u.imag, -v.imag]])
    b = np.array([q.real - p.real, q.imag - p.imag])
    s, _ = np.linalg.solve(a, b)
    return p + s * u


# -- acceptance reporting ------------------------------------------------------
#
# Tests marked ``@pytest.mark.acceptance("name")`` are collected into one
# PASS/FAIL line per criterion at the end of the run.  A criterion that is
# split over several parametrized tests passes only if all of them pass.

_ACCEPTANCE: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): top-level acceptance criterion")


def pytest_runtest_logreport(report):
    name = getattr(report, "acceptance", None)
    if name is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.setdefault(name, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, results in _ACCEPTANCE.items():
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({sum(results)}/{len(results)} checks)")
