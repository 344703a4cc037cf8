"""CNF encodings of equal-length verification instances.

encode_eq1: x determinate, y indeterminate. One variable per candidate
character of y; a conflict clause for every pair of candidates that breaks
the =, > or < relation x demands between a position and its nearest
related earlier position.

encode_eq2: both indeterminate. One variable per (x-character,
y-character) combination at a position; a conflict clause for every pair
of combinations at two positions whose x-order and y-order disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .cnfsat import CnfFormula, SatResult, route_solver, solve_dpll
from .corestr import Assignment, IndetString, op_iso, sign
from .orderctx import det_context


@dataclass(frozen=True, order=True)
class Eq1VarKey:
    i: int
    c: int

    def tag(self) -> str:
        return f"z i={self.i} y={self.c}"


@dataclass(frozen=True, order=True)
class Eq2VarKey:
    i: int
    a: int
    b: int

    def tag(self) -> str:
        return f"z i={self.i} x={self.a} y={self.b}"


VarKey = Union[Eq1VarKey, Eq2VarKey]


@dataclass(frozen=True)
class Encoding:
    formula: CnfFormula
    # variable id -> key, and per-position variable ids in ascending key order
    registry: Mapping[int, VarKey]
    by_position: tuple[tuple[int, ...], ...]

    def var(self, key: VarKey) -> int:
        for v, k in self.registry.items():
            if k == key:
                return v
        raise KeyError(key)


class DecodeError(RuntimeError):
    pass


def _at_least_one(by_position):
    return [tuple(ids) for ids in by_position]


def encode_eq1(x: IndetString, y: IndetString) -> Encoding:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    ctx = det_context(x)  # raises if x is not determinate
    registry: dict[int, VarKey] = {}
    by_position = []
    nxt = 1
    for i, pos in enumerate(y.positions):
        ids = []
        for c in pos:
            registry[nxt] = Eq1VarKey(i, c)
            ids.append(nxt)
            nxt += 1
        by_position.append(tuple(ids))

    clauses = _at_least_one(by_position)
    seen = set()
    ys = y.positions
    relations = ((ctx.leq, 0), (ctx.lmax, 1), (ctx.lmin, -1))
    for i in range(len(x)):
        for table, want in relations:
            j = table[i]
            if j is None:
                continue
            for ci, c in zip(by_position[i], ys[i]):
                for dj, d in zip(by_position[j], ys[j]):
                    if sign(c - d) != want:
                        cl = (-ci, -dj)
                        if cl not in seen:
                            seen.add(cl)
                            clauses.append(cl)
    meta = {v: k.tag() for v, k in registry.items()}
    return Encoding(CnfFormula(nxt - 1, tuple(clauses), meta), registry, tuple(by_position))


def encode_eq2(x: IndetString, y: IndetString) -> Encoding:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    registry: dict[int, VarKey] = {}
    by_position = []
    combos = []
    nxt = 1
    for i, (px, py) in enumerate(zip(x.positions, y.positions)):
        ids = []
        cs = []
        for a in px:
            for b in py:
                registry[nxt] = Eq2VarKey(i, a, b)
                ids.append(nxt)
                cs.append((nxt, a, b))
                nxt += 1
        by_position.append(tuple(ids))
        combos.append(cs)

    clauses = _at_least_one(by_position)
    for i in range(len(x)):
        for k in range(i):
            for vi, a, b in combos[i]:
                for vk, a2, b2 in combos[k]:
                    if sign(a - a2) != sign(b - b2):
                        clauses.append((-vi, -vk))
    meta = {v: k.tag() for v, k in registry.items()}
    return Encoding(CnfFormula(nxt - 1, tuple(clauses), meta), registry, tuple(by_position))


def decode_model(enc: Encoding, model: Mapping[int, bool]):
    """Pick the lowest-keyed true variable per position.

    Returns $y for an eq1 encoding and ($x, $y) for an eq2 encoding.
    """
    picks = []
    for i, ids in enumerate(enc.by_position):
        chosen = next((v for v in ids if model.get(v)), None)
        if chosen is None:
            raise DecodeError(f"no true variable at position {i}")
        picks.append(enc.registry[chosen])
    if picks and isinstance(picks[0], Eq2VarKey):
        ax = tuple(k.a for k in picks)
        ay = tuple(k.b for k in picks)
        if not op_iso(ax, ay):
            raise DecodeError("decoded assignments are not order-isomorphic")
        return ax, ay
    return tuple(k.c for k in picks)


def solve_eq1(x: IndetString, y: IndetString) -> tuple[bool, Assignment | None, SatResult]:
    enc = encode_eq1(x, y)
    res = route_solver(enc.formula)
    if not res.satisfiable:
        return False, None, res
    wy = decode_model(enc, res.model)
    if not op_iso(x.values(), wy):
        raise DecodeError("decoded assignment does not op-match x")
    return True, wy, res


def solve_eq2(
    x: IndetString, y: IndetString
) -> tuple[bool, tuple[Assignment, Assignment] | None, SatResult]:
    enc = encode_eq2(x, y)
    res = solve_dpll(enc.formula)
    if not res.satisfiable:
        return False, None, res
    return True, decode_model(enc, res.model), res
