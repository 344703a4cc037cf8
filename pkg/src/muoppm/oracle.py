"""Brute-force ground truth for indeterminate order-preserving matching.

Every question is answered by exhaustive search over valid assignments.
The search fixes positions left to right, trying characters in ascending
order (pattern side first, then text side), and abandons a partial pair as
soon as the newest position disagrees in sign with an earlier one. That
abandonment loses nothing: order-isomorphism is a conjunction over position
pairs, so a partial pair with a bad pair has no completion.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Literal

from .corestr import Assignment, IndetString, sign

DEFAULT_BUDGET = 10**7

Mode = Literal["one-indet", "both-indet", "alternate", "determinate"]


class BudgetExceeded(RuntimeError):
    pass


def oracle_match(
    x: IndetString, y: IndetString, budget: int = DEFAULT_BUDGET
) -> tuple[bool, tuple[Assignment, Assignment] | None]:
    """Decide x ≈ y by exhaustive search.

    Returns (matched, witness) where the witness is the first pair of valid
    assignments found in position-major, character-ascending order.
    `budget` caps the number of partial assignment pairs examined.
    """
    m = len(x)
    if m != len(y):
        raise ValueError(f"length mismatch: {m} != {len(y)}")
    if m == 0:
        return True, ((), ())
    xs, ys = x.positions, y.positions
    ax = [0] * m
    ay = [0] * m
    # choice[i] indexes into the flattened |x[i]| * |y[i]| grid
    choice = [-1] * m
    visited = 0
    i = 0
    while i >= 0:
        choice[i] += 1
        nx, ny = len(xs[i]), len(ys[i])
        if choice[i] >= nx * ny:
            choice[i] = -1
            i -= 1
            continue
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"oracle explored more than {budget} partial assignments")
        a = xs[i][choice[i] // ny]
        b = ys[i][choice[i] % ny]
        ok = True
        for k in range(i):
            if sign(a - ax[k]) != sign(b - ay[k]):
                ok = False
                break
        if not ok:
            continue
        ax[i], ay[i] = a, b
        if i == m - 1:
            return True, (tuple(ax), tuple(ay))
        i += 1
    return False, None


def oracle_match_exhaustive(x: IndetString, y: IndetString) -> bool:
    """Product-of-all-assignments check with the all-pairs sign definition.

    Exponential in both strings; only for cross-checking tiny instances.
    """
    if len(x) != len(y):
        raise ValueError("length mismatch")
    m = len(x)
    for ax in itertools.product(*x.positions):
        for ay in itertools.product(*y.positions):
            if all(
                sign(ax[i] - ax[j]) == sign(ay[i] - ay[j])
                for i in range(m)
                for j in range(i + 1, m)
            ):
                return True
    return False


def oracle_search(p: IndetString, t: IndetString, budget: int = DEFAULT_BUDGET) -> list[int]:
    """All 0-based window starts i with p ≈ t[i..i+|p|-1]."""
    m, n = len(p), len(t)
    if m > n:
        raise ValueError(f"pattern longer than text: {m} > {n}")
    return [i for i in range(n - m + 1) if oracle_match(p, t[i : i + m], budget)[0]]


@dataclass(frozen=True)
class InstanceGenSpec:
    m: int
    r_max: int
    alphabet_size: int
    seed: int
    mode: Mode = "both-indet"
    # length of the second string; defaults to m
    n: int | None = None

    def __post_init__(self):
        if self.m < 1 or self.r_max < 1 or self.alphabet_size < 1:
            raise ValueError("m, r_max and alphabet_size must be >= 1")
        if self.n is not None and self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode == "alternate" and self.n not in (None, self.m):
            raise ValueError("alternate mode needs equal lengths")
        if self.mode not in ("one-indet", "both-indet", "alternate", "determinate"):
            raise ValueError(f"unknown mode {self.mode!r}")


def _position(rng: random.Random, r_max: int, sigma: int) -> list[int]:
    r = rng.randint(1, r_max)
    return [rng.randrange(sigma) for _ in range(r)]


def gen_instance(spec: InstanceGenSpec) -> tuple[IndetString, IndetString]:
    """Seeded random pair of strings honouring the mode's shape contract.

    one-indet: first string indeterminate, second determinate.
    alternate: at each index at most one of the two strings is indeterminate.
    """
    rng = random.Random(spec.seed)
    m = spec.m
    n = spec.n if spec.n is not None else m
    sigma, r_max = spec.alphabet_size, spec.r_max

    def det(length):
        return [[rng.randrange(sigma)] for _ in range(length)]

    def indet(length):
        return [_position(rng, r_max, sigma) for _ in range(length)]

    if spec.mode == "determinate":
        x, y = det(m), det(n)
    elif spec.mode == "one-indet":
        x, y = indet(m), det(n)
    elif spec.mode == "both-indet":
        x, y = indet(m), indet(n)
    else:
        x, y = [], []
        for _ in range(m):
            wide = _position(rng, r_max, sigma)
            narrow = [rng.randrange(sigma)]
            if rng.random() < 0.5:
                x.append(wide)
                y.append(narrow)
            else:
                x.append(narrow)
                y.append(wide)
    return IndetString(x), IndetString(y)
