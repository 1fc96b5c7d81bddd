"""Randomised checks of the closed-form cases and the closure lemma."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .intersect import intersect
from .quadfield import FieldTag, QuadElem, format_elem
from .targets import RingKind, cases_for, direction_set, is_integer, ring_class


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    passed: bool
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  counterexample: {self.counterexample}" if self.counterexample else ""
        return f"{status}  {self.name}  ({self.trials} trials){tail}"


def random_integer(tag: FieldTag, rng: random.Random, bound: int = 1000) -> QuadElem:
    """Uniform-ish element of the ring of integers with numerators in [-bound, bound]."""
    a = rng.randint(-bound, bound)
    b = rng.randint(-bound, bound)
    if ring_class(tag).kind is RingKind.TWO_THREE_MOD_4:
        return tag.elem(a, b)
    if (a - b) % 2:
        b += 1 if b < bound else -1
    return tag.elem(Fraction(a, 2), Fraction(b, 2))


def check_cases(tag: FieldTag, trials: int, rng: random.Random, bound: int = 1000) -> list[CheckResult]:
    """Each closed-form case against the generic operator on random ring elements."""
    kind = ring_class(tag).kind
    dirs = direction_set(tag)
    results = []
    for case in cases_for(kind):
        bad = None
        for _ in range(trials):
            p, q = random_integer(tag, rng, bound), random_integer(tag, rng, bound)
            got = intersect(dirs[case.u], dirs[case.v], p, q)
            want = case.apply(p, q)
            if got != want:
                bad = (
                    f"p={format_elem(p)} q={format_elem(q)}: "
                    f"intersect={format_elem(got)} formula={format_elem(want)}"
                )
                break
        results.append(CheckResult(f"{kind} case ({case.number}) {case.label} = {case.text}", trials, bad is None, bad))
    return results


def check_closure_lemma(tag: FieldTag, trials: int, rng: random.Random, bound: int = 1000) -> CheckResult:
    """Intersections of folds through ring elements stay in the ring, for every direction pair."""
    dirs = direction_set(tag)
    pairs = list(permutations(range(len(dirs)), 2))
    for _ in range(trials):
        p, q = random_integer(tag, rng, bound), random_integer(tag, rng, bound)
        for i, j in pairs:
            z = intersect(dirs[i], dirs[j], p, q)
            if not is_integer(z):
                return CheckResult(
                    "closure lemma", trials, False,
                    f"u={dirs[i]} v={dirs[j]} p={format_elem(p)} q={format_elem(q)} -> {format_elem(z)}",
                )
    return CheckResult("closure lemma (all 6 direction pairs)", trials, True)


def verify_field(tag: FieldTag, trials: int, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    return check_cases(tag, trials, rng) + [check_closure_lemma(tag, trials, rng)]
