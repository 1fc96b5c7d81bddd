"""Backend selection for the closure kernel.

The compiled extension is used when it imported and the inputs provably
fit in int64; otherwise the pure-Python kernel runs.  Setting
``ORIGAMI_PURE_PYTHON=1`` forces the fallback.  Both backends return
identical results.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

_INT64_SAFE = 1 << 62

BACKENDS = ("python",) + (("cython",) if _ckernel is not None else ())
BACKEND = "cython" if _ckernel is not None and not os.environ.get("ORIGAMI_PURE_PYTHON") else "python"


def _module(backend):
    name = backend or BACKEND
    if name == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        return _ckernel
    if name == "python":
        return _pykernel
    raise ValueError(f"unknown kernel backend {name!r}")


def _absmax(values) -> int:
    return max(map(abs, values), default=0)


def line_keys(xs, ys, dr: int, dc: int, backend: str | None = None) -> list[int]:
    mod = _module(backend)
    if mod is _ckernel and (abs(dr) + abs(dc)) * max(_absmax(xs), _absmax(ys)) >= _INT64_SAFE:
        mod = _pykernel
    return mod.line_keys(xs, ys, dr, dc)


def new_intersections(xs, ys, scale: int, tasks, backend: str | None = None, workers: int = 1):
    """New intersection numerators, sorted and unique; see ``_pykernel``.

    With ``workers > 1`` the fold pairs are split across threads (the
    compiled kernel releases the GIL) and the partial results are merged
    into the same canonical sorted output.
    """
    mod = _module(backend)
    if mod is _ckernel and not _fits_int64(xs, ys, scale, tasks):
        mod = _pykernel
    if workers <= 1:
        return mod.new_intersections(xs, ys, scale, tasks)
    chunks = []
    for t in tasks:
        alphas = t[0]
        step = max(1, -(-len(alphas) // workers))
        for i in range(0, len(alphas), step):
            chunks.append((alphas[i : i + step],) + tuple(t[1:]))
    xs, ys = mod.as_native(xs), mod.as_native(ys)
    groups = [chunks[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda g: mod.new_intersections(xs, ys, scale, g), groups))
    return mod.merge_unique(parts)


def _fits_int64(xs, ys, scale, tasks) -> bool:
    if scale * max(_absmax(xs), _absmax(ys)) >= _INT64_SAFE:
        return False
    for alphas, betas, ur, uc, vr, vc, mult in tasks:
        a, b = _absmax(alphas), _absmax(betas)
        bound = abs(mult) * (a * max(abs(vr), abs(vc)) + b * max(abs(ur), abs(uc)))
        if bound >= _INT64_SAFE:
            return False
    return True
