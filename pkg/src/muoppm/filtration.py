"""Full-text search with a rise/fall/wildcard filter in front of verification.

Adjacent positions are encoded as ONE when every choice rises, ZERO when
every choice stays level or falls, and STAR otherwise. A window can only
match if the pattern's code and the window's code agree wherever neither
side is STAR, so exact wildcard matching over the codes yields a superset
of the matching windows; each candidate is then verified exactly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal

from .alternate import is_alternating, solve_alternate
from .corestr import Assignment, CharSet, IndetString
from .oracle import DEFAULT_BUDGET, oracle_match
from .satencode import solve_eq1, solve_eq2
from .verify_indet import verify_greedy, verify_lis

ZERO, ONE, STAR = 0, 1, 2
SYMBOLS = "01*"
WORD_BITS = 64

Method = Literal["auto", "greedy", "lis", "eq1", "eq2", "alternate", "naive", "oracle"]
METHODS = ("auto", "greedy", "lis", "eq1", "eq2", "alternate", "naive", "oracle")


class ShapeError(ValueError):
    """The chosen method cannot handle the given strings."""


def encode_pair(a: CharSet, b: CharSet) -> int:
    if a[-1] < b[0]:
        return ONE
    if a[0] >= b[-1]:
        return ZERO
    return STAR


def encode_binary(s: IndetString) -> tuple[int, ...]:
    if len(s) < 2:
        raise ValueError("encoding needs at least two positions")
    ps = s.positions
    return tuple(encode_pair(a, b) for a, b in zip(ps, ps[1:]))


def format_code(code: Iterable[int]) -> str:
    return "".join(SYMBOLS[c] for c in code)


def _masks(p_enc: tuple[int, ...]) -> dict[int, int]:
    # bit k of masks[c] is set when pattern symbol k is compatible with text symbol c
    masks = {ZERO: 0, ONE: 0, STAR: (1 << len(p_enc)) - 1}
    for k, c in enumerate(p_enc):
        bit = 1 << k
        if c == STAR:
            masks[ZERO] |= bit
            masks[ONE] |= bit
        else:
            masks[c] |= bit
    return masks


def _compatible(a: int, b: int) -> bool:
    return a == b or a == STAR or b == STAR


def iter_wildcard_match(p_enc: tuple[int, ...], t_codes: Iterable[int]) -> Iterator[int]:
    """Stream alignment positions of p_enc in a stream of text codes."""
    k = len(p_enc)
    if k == 0:
        for i, _ in enumerate(itertools.chain([None], t_codes)):
            yield i
        return
    if k <= WORD_BITS:
        masks = _masks(p_enc)
        state = 0
        hit = 1 << (k - 1)
        for i, c in enumerate(t_codes):
            state = ((state << 1) | 1) & masks[c]
            if state & hit:
                yield i - k + 1
        return
    # naive scan over a sliding buffer, aborting each alignment at its first clash
    buf: deque[int] = deque(maxlen=k)
    for i, c in enumerate(t_codes):
        buf.append(c)
        if len(buf) == k and all(_compatible(a, b) for a, b in zip(p_enc, buf)):
            yield i - k + 1


def wildcard_match(p_enc: tuple[int, ...], t_enc: tuple[int, ...]) -> list[int]:
    if len(p_enc) > len(t_enc):
        return []
    return list(iter_wildcard_match(p_enc, t_enc))


@dataclass
class SearchStats:
    windows_total: int = 0
    candidates_after_filter: int = 0
    verified_matches: int = 0


@dataclass
class MatchReport:
    positions: list[int] = field(default_factory=list)
    # start -> (pattern assignment, text assignment); absent when the verifier gives none
    witnesses: dict[int, tuple[Assignment, Assignment]] = field(default_factory=dict)
    # start -> verifier actually used for that window
    routes: dict[int, str] = field(default_factory=dict)
    candidates: list[int] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)


def route(p: IndetString, w: IndetString, method: str) -> str:
    """Resolve `auto`/`naive` to a concrete verifier for one window."""
    if method == "naive":
        return "greedy"
    if method != "auto":
        return method
    if p.determinate or w.determinate:
        return "greedy"
    if is_alternating(p, w):
        return "alternate"
    return "eq2"


def _sat_info(info: dict | None, solver: str, res) -> None:
    if info is not None and res is not None:
        info.update(solver=solver, decisions=res.decisions)


def verify_window(
    p: IndetString,
    w: IndetString,
    method: str,
    budget: int = DEFAULT_BUDGET,
    info: dict | None = None,
) -> tuple[bool, tuple[Assignment, Assignment] | None]:
    """Verify one equal-length pair with a concrete method.

    If `info` is given, SAT-backed methods record which solver ran and how
    many decisions it made.
    """
    if method in ("greedy", "lis", "eq1"):
        if p.determinate:
            det, ind, flip = p, w, False
        elif w.determinate:
            det, ind, flip = w, p, True
        else:
            raise ShapeError(f"method {method} needs one determinate side")
        if method == "lis":
            return verify_lis(det, ind), None
        if method == "greedy":
            ok, wit = verify_greedy(det, ind)
        else:
            ok, wit, res = solve_eq1(det, ind)
            # conflict clauses are binary, so the width is set by the widest position
            _sat_info(info, "2sat" if ind.r <= 2 else "dpll", res)
        if not ok:
            return False, None
        pair = (det.values(), wit)
        return True, (pair[::-1] if flip else pair)
    if method == "eq2":
        ok, wit, res = solve_eq2(p, w)
        _sat_info(info, "dpll", res)
        return ok, wit
    if method == "alternate":
        if not is_alternating(p, w):
            raise ShapeError("window is not alternating")
        ok, wit, res = solve_alternate(p, w)
        _sat_info(info, "2sat", res)
        return ok, wit
    if method == "oracle":
        return oracle_match(p, w, budget)
    raise ShapeError(f"unknown method {method!r}")


def _check_method(p: IndetString, method: str) -> None:
    if method not in METHODS:
        raise ShapeError(f"unknown method {method!r}")


def iter_search(
    p: IndetString,
    text: Iterable[CharSet],
    method: str = "auto",
    use_filter: bool = True,
    budget: int = DEFAULT_BUDGET,
    stats: SearchStats | None = None,
    candidates: list[int] | None = None,
) -> Iterator[tuple[int, tuple[Assignment, Assignment] | None, str]]:
    """Stream (start, witness, route) for every matching window.

    `text` is consumed one position at a time; only the last |p| positions
    are kept, so memory stays O(|p| r) however long the text is.
    """
    _check_method(p, method)
    if method == "naive":
        use_filter = False
    m = len(p)
    if m == 0:
        raise ValueError("empty pattern")
    stats = stats if stats is not None else SearchStats()
    window: deque[CharSet] = deque(maxlen=m)

    def check(start: int):
        stats.candidates_after_filter += 1
        if candidates is not None:
            candidates.append(start)
        w = IndetString.__new__(IndetString)
        object.__setattr__(w, "positions", tuple(window))
        chosen = route(p, w, method)
        ok, wit = verify_window(p, w, chosen, budget)
        if ok:
            stats.verified_matches += 1
            return (start, wit, chosen)
        return None

    if not use_filter or m == 1:
        for i, pos in enumerate(text):
            window.append(pos)
            if len(window) == m:
                stats.windows_total += 1
                hit = check(i - m + 1)
                if hit:
                    yield hit
        return

    def codes() -> Iterator[int]:
        # fills the window as the matcher pulls codes, so each alignment the
        # matcher yields refers to the window currently held
        prev = None
        for pos in text:
            window.append(pos)
            if len(window) == m:
                stats.windows_total += 1
            if prev is not None:
                yield encode_pair(prev, pos)
            prev = pos

    for start in iter_wildcard_match(encode_binary(p), codes()):
        found = check(start)
        if found:
            yield found


def search(
    p: IndetString,
    t: IndetString,
    method: str = "auto",
    use_filter: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> MatchReport:
    """All 0-based starts i with p ≈ t[i..i+|p|-1], in ascending order."""
    if len(p) > len(t):
        raise ShapeError(f"pattern longer than text: {len(p)} > {len(t)}")
    _check_method(p, method)
    if method in ("greedy", "lis", "eq1", "naive") and not (p.determinate or t.determinate):
        raise ShapeError(f"method {method} needs the pattern or the text to be determinate")
    report = MatchReport()
    hits = iter_search(p, t.positions, method, use_filter, budget, report.stats, report.candidates)
    for start, wit, chosen in hits:
        report.positions.append(start)
        report.routes[start] = chosen
        if wit is not None:
            report.witnesses[start] = wit
    return report


def naive_search(p: IndetString, t: IndetString) -> list[int]:
    """Verify every window with the greedy check; the unfiltered baseline."""
    return search(p, t, method="naive").positions

