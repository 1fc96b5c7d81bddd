"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 point budget exceeded (partial TSV still written), 4 target not an
algebraic integer, 5 trace failed replay.

Option precedence: command-line flags, then ``ORIGAMI_MAX_POINTS`` (point
budget only), then the ``--config`` file (flat ``key=value`` lines), then
built-in defaults.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
from pathlib import Path

from . import approx, closure
from .checks import verify_field
from .planner import HintMismatch, NotAnInteger, TraceError, dump_trace, load_trace, plan, replay
from .quadfield import FieldError, FieldTag, format_elem, parse_elem
from .render import RenderSpec, render_svg
from .targets import direction_set

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_NOT_INTEGER = 4
EXIT_TRACE = 5

DEFAULTS = {
    "mode": "exact",
    "generations": 5,
    "max_points": closure.DEFAULT_MAX_POINTS,
    "trials": 1000,
    "seed_rng": 0,
    "workers": 1,
}


class ConfigError(ValueError):
    pass


def read_config(path: str) -> dict[str, str]:
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def _resolve(args, cfg: dict[str, str], key: str, conv=str):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key == "max_points" and os.environ.get("ORIGAMI_MAX_POINTS"):
        return int(os.environ["ORIGAMI_MAX_POINTS"])
    if key in cfg:
        return conv(cfg[key])
    return DEFAULTS.get(key)


_PI_TERM = re.compile(r"^([+-]?\d*(?:\.\d*)?)\*?pi(?:/(\d+(?:\.\d*)?))?$")


def parse_angle(text: str) -> float:
    t = text.strip().replace(" ", "")
    mt = _PI_TERM.match(t)
    if mt:
        coef = mt.group(1)
        c = float(coef) if coef not in ("", "+", "-") else (-1.0 if coef == "-" else 1.0)
        d = float(mt.group(2)) if mt.group(2) else 1.0
        return c * math.pi / d
    return float(t)


def parse_angles(text: str) -> tuple[float, ...]:
    """Comma-separated radians; ``pi`` expressions like ``2pi/3`` and ``U<n>`` (cyclotomic) are accepted."""
    t = text.strip()
    if re.fullmatch(r"U\d+", t):
        return approx.cyclotomic_angles(int(t[1:]))
    return tuple(parse_angle(a) for a in t.split(",") if a.strip())


def parse_window(text: str) -> tuple[float, float, float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise ConfigError("--window takes xmin,xmax,ymin,ymax")
    return tuple(parts)


def _write(path: str | None, text: str) -> None:
    if path == "-" or path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


# -- generate / stats ------------------------------------------------------------

def _exact_run(args, cfg):
    m = _resolve(args, cfg, "m", int)
    if m is None:
        raise ConfigError("--m is required in exact mode")
    tag = FieldTag(m)
    config = closure.OrigamiConfig(
        tag,
        tuple(direction_set(tag)),
        max_generations=_resolve(args, cfg, "generations", int),
        max_points=_resolve(args, cfg, "max_points", int),
        workers=_resolve(args, cfg, "workers", int),
        incremental=bool(args.incremental),
    )
    try:
        return tag, closure.run_closure(config), None
    except closure.BudgetExceeded as exc:
        return tag, exc.partial, exc


def _approx_run(args, cfg):
    angles_text = _resolve(args, cfg, "angles")
    m = _resolve(args, cfg, "m", int)
    if angles_text:
        angles = parse_angles(angles_text)
    elif m is not None:
        angles = approx.angles_for_directions(direction_set(FieldTag(m)))
    else:
        raise ConfigError("approx mode needs --angles or --m")
    config = approx.ApproxConfig(
        angles,
        generations=_resolve(args, cfg, "generations", int),
        max_points=_resolve(args, cfg, "max_points", int),
    )
    try:
        return approx.approx_closure(config), None
    except approx.ApproxBudgetExceeded as exc:
        return exc.partial, exc


def _render_spec(args, cfg) -> RenderSpec:
    window = _resolve(args, cfg, "window")
    return RenderSpec(window=parse_window(window) if window else None)


def cmd_generate(args, cfg) -> int:
    mode = _resolve(args, cfg, "mode")
    out_tsv = _resolve(args, cfg, "out_tsv")
    out_svg = _resolve(args, cfg, "out_svg")
    spec = _render_spec(args, cfg)
    if mode == "exact":
        tag, ps, err = _exact_run(args, cfg)
        trailer = f"truncated: {err}" if err else None
        tsv = closure.dump_tsv(ps, trailer)
        triples = [(z.to_complex().real, z.to_complex().imag, g) for z, g in ps.sorted_items()]
        title = f"origami points, m={tag.m}, {ps.max_generation} generations"
    elif mode == "approx":
        aps, err = _approx_run(args, cfg)
        trailer = f"truncated: {err}" if err else None
        tsv = approx.dump_tsv(aps, trailer)
        triples = [(p.x, p.y, g) for p, g in zip(aps.points, aps.generations)]
        title = f"origami points (approximate), {aps.max_generation} generations"
    else:
        raise ConfigError(f"unknown mode {mode!r}")
    if out_tsv or not out_svg:
        _write(out_tsv, tsv)
    if out_svg:
        _write(out_svg, render_svg(triples, spec, title))
    if err is not None:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_stats(args, cfg) -> int:
    mode = _resolve(args, cfg, "mode")
    if mode == "exact":
        _, ps, err = _exact_run(args, cfg)
        rows = [(g, abs(z.to_complex())) for z, g in ps.sorted_items()]
    elif mode == "approx":
        aps, err = _approx_run(args, cfg)
        rows = [(g, math.hypot(p.x, p.y)) for p, g in zip(aps.points, aps.generations)]
    else:
        raise ConfigError(f"unknown mode {mode!r}")
    by_gen: dict[int, list[float]] = {}
    for g, r in rows:
        by_gen.setdefault(g, []).append(r)
    print("generation\tcount\tcumulative\tmin_modulus\tmax_modulus")
    total = 0
    for g in sorted(by_gen):
        mods = by_gen[g]
        total += len(mods)
        print(f"{g}\t{len(mods)}\t{total}\t{min(mods):.6g}\t{max(mods):.6g}")
    if err is not None:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# -- plan / replay / verify --------------------------------------------------------

def cmd_plan(args, cfg) -> int:
    m = _resolve(args, cfg, "m", int)
    target_text = _resolve(args, cfg, "target")
    if m is None or target_text is None:
        raise ConfigError("plan needs --m and --target")
    tag = FieldTag(m)
    target = parse_elem(target_text, tag)
    try:
        trace = plan(tag, target)
    except NotAnInteger as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_INTEGER
    _write(_resolve(args, cfg, "out"), dump_trace(trace))
    return EXIT_OK


def cmd_replay(args, cfg) -> int:
    try:
        trace = load_trace(Path(args.trace).read_text())
        z = replay(trace)
    except HintMismatch as exc:
        print(f"error: hint mismatch at step {exc.step}: {exc}", file=sys.stderr)
        return EXIT_TRACE
    except TraceError as exc:
        print(f"error: invalid trace: {exc}", file=sys.stderr)
        return EXIT_TRACE
    print(format_elem(z))
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    m = _resolve(args, cfg, "m", int)
    if m is None:
        raise ConfigError("verify needs --m")
    trials = _resolve(args, cfg, "trials", int)
    if trials < 1:
        raise ConfigError("--trials must be at least 1")
    tag = FieldTag(m)
    results = verify_field(tag, trials, _resolve(args, cfg, "seed_rng", int))
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"first counterexample: {failed[0].counterexample}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value file; flags take precedence")
    common.add_argument("--m", type=int, help="squarefree negative integer selecting Q(sqrt(m))")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--mode", choices=("exact", "approx"))
    run.add_argument("--angles", help="approx mode: comma-separated radians, pi expressions, or U<n>")
    run.add_argument("--generations", type=int)
    run.add_argument("--max-points", dest="max_points", type=int)
    run.add_argument("--workers", type=int, help="threads for the exact closure kernel")
    run.add_argument("--incremental", action="store_true", help="pair only folds through new points")

    p = argparse.ArgumentParser(prog="origami", description="Origami constructions of imaginary quadratic integer rings.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common, run], help="compute a point set; write TSV and/or SVG")
    g.add_argument("--out-tsv", dest="out_tsv")
    g.add_argument("--out-svg", dest="out_svg")
    g.add_argument("--window", help="xmin,xmax,ymin,ymax for the SVG")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("stats", parents=[common, run], help="origami-distance histogram")
    s.set_defaults(func=cmd_stats)

    pl = sub.add_parser("plan", parents=[common], help="write a construction trace for a target")
    pl.add_argument("--target", help='element such as "3+2*sqrt(-5)"')
    pl.add_argument("--out", help="trace file (default stdout)")
    pl.set_defaults(func=cmd_plan)

    r = sub.add_parser("replay", parents=[common], help="re-execute a trace and print its target")
    r.add_argument("trace")
    r.set_defaults(func=cmd_replay)

    v = sub.add_parser("verify", parents=[common], help="random checks of the closed-form cases and closure lemma")
    v.add_argument("--trials", type=int)
    v.add_argument("--seed-rng", dest="seed_rng", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = read_config(args.config) if args.config else {}
        return args.func(args, cfg)
    except (ConfigError, FieldError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
