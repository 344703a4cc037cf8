"""Verification of a determinate string against an indeterminate one.

Both checks sort the positions of the determinate string, merge runs of
equal characters by intersecting the matching indeterminate positions, and
then ask whether the merged groups admit a strictly increasing choice.
`verify_greedy` answers with a single left-to-right sweep, `verify_lis`
with a longest-increasing-subsequence length test.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .corestr import Assignment, CharSet, IndetString


@dataclass(frozen=True)
class GroupedString:
    # intersected candidate sets, one per distinct character of x, ascending
    groups: tuple[CharSet, ...]
    # spans[g] = (start, stop) slice of the sort permutation merged into groups[g]
    spans: tuple[tuple[int, int], ...]


def _check_pair(x: IndetString, y: IndetString) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if not x.determinate:
        raise ValueError("x must be determinate")


def sorted_indexes(x: IndetString) -> tuple[int, ...]:
    """Stable permutation sorting the determinate string x non-decreasingly."""
    vals = x.values()
    return tuple(sorted(range(len(vals)), key=vals.__getitem__))


def intersect_sorted(a: CharSet, b: CharSet) -> CharSet:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            out.append(a[i])
            i += 1
            j += 1
    return tuple(out)


def group_and_intersect(
    x: IndetString, y: IndetString, pi: tuple[int, ...] | None = None
) -> GroupedString:
    _check_pair(x, y)
    if pi is None:
        pi = sorted_indexes(x)
    xs, ys = x.positions, y.positions
    groups: list[CharSet] = []
    spans: list[tuple[int, int]] = []
    start = 0
    for k, i in enumerate(pi):
        if k > 0 and xs[i][0] == xs[pi[k - 1]][0]:
            groups[-1] = intersect_sorted(groups[-1], ys[i])
        else:
            if k > 0:
                spans.append((start, k))
            start = k
            groups.append(ys[i])
    if pi:
        spans.append((start, len(pi)))
    return GroupedString(tuple(groups), tuple(spans))


def verify_greedy(x: IndetString, y: IndetString) -> tuple[bool, Assignment | None]:
    """Decide x ≈ y for determinate x; on success also return a witness for y.

    Grouping, the strict greedy sweep and the witness all come out of one
    pass over y gathered into sorted-x order.
    """
    _check_pair(x, y)
    vals = x.values()
    m = len(vals)
    pi = sorted(range(m), key=vals.__getitem__)
    v_pi = list(map(vals.__getitem__, pi))
    y_pi = list(map(y.positions.__getitem__, pi))
    picks = [0] * m
    prev = None
    k = 0
    while k < m:
        g = y_pi[k]
        j = k + 1
        while j < m and v_pi[j] == v_pi[k]:
            g = intersect_sorted(g, y_pi[j])
            j += 1
        c = 0 if prev is None else bisect_right(g, prev)
        if c >= len(g):
            return False, None
        prev = g[c]
        picks[k:j] = [prev] * (j - k)
        k = j
    witness = [0] * m
    for i, c in zip(pi, picks):
        witness[i] = c
    return True, tuple(witness)


def lis_length(z: list[int]) -> int:
    """Length of the longest strictly increasing subsequence (patience piles)."""
    tops: list[int] = []
    for v in z:
        k = bisect_left(tops, v)
        if k == len(tops):
            tops.append(v)
        else:
            tops[k] = v
    return len(tops)


def lis_sequence(x: IndetString, y: IndetString) -> list[int]:
    """The concatenation of every group's characters in descending order."""
    grouped = group_and_intersect(x, y)
    z: list[int] = []
    for g in grouped.groups:
        z.extend(reversed(g))
    return z


def verify_lis(x: IndetString, y: IndetString) -> bool:
    _check_pair(x, y)
    grouped = group_and_intersect(x, y)
    if any(not g for g in grouped.groups):
        return False
    z: list[int] = []
    for g in grouped.groups:
        z.extend(reversed(g))
    return lis_length(z) == len(grouped.groups)
