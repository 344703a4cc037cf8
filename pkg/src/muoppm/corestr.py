"""Determinate and indeterminate integer strings.

A position of an indeterminate string is a CharSet: a nonempty, strictly
ascending tuple of integers. Determinate strings are the special case where
every position holds exactly one character.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

CharSet = tuple[int, ...]
Assignment = tuple[int, ...]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

_SEP = re.compile(r"[\s,]+")


class ParseError(ValueError):
    """Malformed string text; `position` is the 0-based offending position."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"position {position}: {message}"
        super().__init__(message)
        self.position = position


def charset(chars: Iterable[int]) -> CharSet:
    """Canonicalize an iterable of characters into a CharSet."""
    out = tuple(sorted(set(chars)))
    if not out:
        raise ValueError("empty character set")
    for c in out:
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"characters must be integers, got {c!r}")
        if c < INT64_MIN or c > INT64_MAX:
            raise ValueError(f"character {c} outside signed 64-bit range")
    return out


@dataclass(frozen=True)
class IndetString:
    positions: tuple[CharSet, ...]

    def __init__(self, positions: Iterable[Iterable[int]]):
        object.__setattr__(self, "positions", tuple(charset(p) for p in positions))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> IndetString:
        """Build a determinate string, skipping per-position canonicalization."""
        s = object.__new__(cls)
        pos = []
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"characters must be integers, got {v!r}")
            pos.append((v,))
        object.__setattr__(s, "positions", tuple(pos))
        return s

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, i):
        if isinstance(i, slice):
            s = object.__new__(IndetString)
            object.__setattr__(s, "positions", self.positions[i])
            return s
        return self.positions[i]

    def __iter__(self) -> Iterator[CharSet]:
        return iter(self.positions)

    def __str__(self) -> str:
        return serialize_string(self)

    def __repr__(self) -> str:
        return f"IndetString({serialize_string(self)!r})"

    @property
    def determinate(self) -> bool:
        return all(len(p) == 1 for p in self.positions)

    @property
    def r(self) -> int:
        """Largest number of candidate characters at any position."""
        return max((len(p) for p in self.positions), default=0)

    def values(self) -> Assignment:
        """The characters of a determinate string."""
        if not self.determinate:
            raise ValueError("string is not determinate")
        return tuple(p[0] for p in self.positions)

    def is_valid(self, assignment: Sequence[int]) -> bool:
        """True iff `assignment` picks one character from every position."""
        if len(assignment) != len(self.positions):
            return False
        return all(c in p for c, p in zip(assignment, self.positions))


def _parse_int(token: str, position: int) -> int:
    try:
        v = int(token, 10)
    except ValueError:
        raise ParseError(f"not a base-10 integer: {token!r}", position) from None
    if v < INT64_MIN or v > INT64_MAX:
        raise ParseError(f"{v} outside signed 64-bit range", position)
    return v


def parse_position(token: str, position: int = 0) -> CharSet:
    alts = token.split("|")
    if any(a == "" for a in alts):
        raise ParseError(f"empty alternative in {token!r}", position)
    return tuple(sorted({_parse_int(a, position) for a in alts}))


def iter_positions(text: str, start: int = 0) -> Iterator[CharSet]:
    """Yield canonical positions from string text, numbering errors from `start`."""
    for k, token in enumerate(t for t in _SEP.split(text) if t):
        yield parse_position(token, start + k)


def parse_string(text: str) -> IndetString:
    """Parse "1 2|5 3 3" style text. Separators are whitespace or commas."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty string")
    # a separator run containing two commas marks an empty position
    for k, gap in enumerate(_SEP.findall(stripped)):
        if gap.count(",") > 1:
            raise ParseError("empty position", k + 1)
    if stripped[0] == "," or stripped[-1] == ",":
        raise ParseError("empty position", 0 if stripped[0] == "," else None)
    s = object.__new__(IndetString)
    object.__setattr__(s, "positions", tuple(iter_positions(stripped)))
    return s


def serialize_string(s: IndetString) -> str:
    return " ".join("|".join(str(c) for c in p) for p in s.positions)


def read_strings(lines: Iterable[str]) -> list[IndetString]:
    """One string per line; blank lines and lines starting with '#' are skipped."""
    out = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_string(line))
    return out


def rank_signature(values: Sequence[int]) -> tuple[int, ...]:
    """Dense ranks: two strings are order-isomorphic iff their signatures agree."""
    ranks = {v: k for k, v in enumerate(sorted(set(values)))}
    return tuple(ranks[v] for v in values)


def op_iso(x: Sequence[int], y: Sequence[int]) -> bool:
    """Order-isomorphism of two determinate strings.

    Sorting the positions of `x` and walking consecutive pairs is enough:
    equal neighbours in `x` must be equal in `y` and strict rises must stay
    strict rises, and both relations chain transitively over the whole order.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    order = sorted(range(len(x)), key=lambda i: (x[i], i))
    for u, v in zip(order, order[1:]):
        if x[u] == x[v]:
            if y[u] != y[v]:
                return False
        elif not y[u] < y[v]:
            return False
    return True


def sign(v: int) -> int:
    return (v > 0) - (v < 0)
