"""Leq / Lmax / Lmin order contexts.

For a determinate string each position i points at one earlier position
(if any): the latest equal character or, when there is none, the nearest
smaller character (largest value, then latest index) and the nearest larger
character (smallest value, then latest index). For an indeterminate string every
character of every position gets the full set of earlier positions that
can be equal / smaller / larger.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .corestr import IndetString


@dataclass(frozen=True)
class DetOrderContext:
    leq: tuple[int | None, ...]
    lmax: tuple[int | None, ...]
    lmin: tuple[int | None, ...]


@dataclass(frozen=True)
class IndetOrderContext:
    # indexed [i][j] for character j (ascending) of position i
    leq: tuple[tuple[frozenset[int], ...], ...]
    lmax: tuple[tuple[frozenset[int], ...], ...]
    lmin: tuple[tuple[frozenset[int], ...], ...]


def _nearest_earlier(order: list[int], key) -> list[int | None]:
    """For each index, the nearest entry to its left in `order` with a smaller
    index, skipping entries that share its key.

    Entries are handled one equal-key group at a time: the group is queried
    against the stack built from strictly preceding groups (largest index
    first, so pops needed by bigger indices happen before smaller ones), and
    only then pushed.
    """
    out: list[int | None] = [None] * len(order)
    stack: list[int] = []
    g = 0
    while g < len(order):
        h = g
        while h < len(order) and key(order[h]) == key(order[g]):
            h += 1
        for k in range(h - 1, g - 1, -1):
            i = order[k]
            while stack and stack[-1] > i:
                stack.pop()
            out[i] = stack[-1] if stack else None
        stack.extend(order[g:h])
        g = h
    return out


def det_context(x: IndetString) -> DetOrderContext:
    vals = x.values()
    m = len(vals)
    asc = sorted(range(m), key=lambda i: (vals[i], i))
    desc = sorted(range(m), key=lambda i: (-vals[i], i))
    lmax = _nearest_earlier(asc, vals.__getitem__)
    lmin = _nearest_earlier(desc, vals.__getitem__)
    leq: list[int | None] = [None] * m
    for a, b in zip(asc, asc[1:]):
        if vals[a] == vals[b]:
            leq[b] = a
    # an equal earlier character already pins every relation of position i,
    # so the smaller/larger neighbours are only kept when there is none
    for i in range(m):
        if leq[i] is not None:
            lmax[i] = lmin[i] = None
    return DetOrderContext(tuple(leq), tuple(lmax), tuple(lmin))


def indet_context(x: IndetString) -> IndetOrderContext:
    xs = x.positions
    leq, lmax, lmin = [], [], []
    for i, pos in enumerate(xs):
        eq_i, mx_i, mn_i = [], [], []
        for c in pos:
            eq, mx, mn = set(), set(), set()
            for k in range(i):
                other = xs[k]
                j = bisect_left(other, c)
                if j < len(other) and other[j] == c:
                    eq.add(k)
                if c > other[0]:
                    mx.add(k)
                if c < other[-1]:
                    mn.add(k)
            eq_i.append(frozenset(eq))
            mx_i.append(frozenset(mx))
            mn_i.append(frozenset(mn))
        leq.append(tuple(eq_i))
        lmax.append(tuple(mx_i))
        lmin.append(tuple(mn_i))
    return IndetOrderContext(tuple(leq), tuple(lmax), tuple(lmin))
