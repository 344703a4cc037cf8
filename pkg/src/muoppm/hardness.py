"""Reduction from 3CNF-SAT to matching two indeterminate strings.

Variable v (0-based) occupies position v of both strings: the pattern holds
v+1 and the text holds {2v+1, 2v+2}, the larger value meaning "true". Each
clause occupies one later position: the pattern may pick any of its
variables, the text any value that satisfies one of its literals. An
order-isomorphic choice exists exactly when the formula is satisfiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corestr import Assignment, IndetString, op_iso


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class Cnf3Clause:
    # 0-based variable indices and polarity bits (0 positive, 1 negated)
    z: tuple[int, int, int]
    l: tuple[int, int, int]
    # True when literals were repeated to fill three slots
    padded: bool = False

    def literals(self) -> list[tuple[int, int]]:
        return list(dict.fromkeys(zip(self.z, self.l)))

    def satisfied_by(self, valuation: Sequence[bool]) -> bool:
        return any(valuation[v] != bool(neg) for v, neg in zip(self.z, self.l))


@dataclass(frozen=True)
class Cnf3Instance:
    num_vars: int
    clauses: tuple[Cnf3Clause, ...]
    # source_index[c] = index of the raw clause that produced clause c
    source_index: tuple[int, ...] = ()

    def satisfied_by(self, valuation: Sequence[bool]) -> bool:
        return all(c.satisfied_by(valuation) for c in self.clauses)


@dataclass(frozen=True)
class ReductionOutput:
    pattern: IndetString
    text: IndetString
    var_offset: int


def sanitize_3cnf(raw: Iterable[Sequence[int]], num_vars: int | None = None) -> Cnf3Instance:
    """DIMACS-style clauses (signed 1-based ints, at most three) to Cnf3Instance.

    Tautologies are dropped, repeated literals collapse, and clauses with fewer
    than three distinct literals are padded by repeating their first literal.
    """
    clauses = []
    sources = []
    top = 0
    for idx, c in enumerate(raw):
        c = list(c)
        if len(c) > 3:
            raise ReductionError(f"clause {idx} has {len(c)} literals, at most 3 allowed")
        if not c:
            raise ReductionError(f"clause {idx} is empty")
        if any(l == 0 for l in c):
            raise ReductionError(f"clause {idx} contains literal 0")
        top = max(top, *(abs(l) for l in c))
        lits = list(dict.fromkeys(c))
        if any(-l in lits for l in lits):
            continue
        padded = len(lits) < 3
        while len(lits) < 3:
            lits.append(lits[0])
        clauses.append(
            Cnf3Clause(
                tuple(abs(l) - 1 for l in lits),
                tuple(int(l < 0) for l in lits),
                padded,
            )
        )
        sources.append(idx)
    if num_vars is None:
        num_vars = top
    elif top > num_vars:
        raise ReductionError(f"variable {top} exceeds declared count {num_vars}")
    return Cnf3Instance(num_vars, tuple(clauses), tuple(sources))


def _check_sanitized(f: Cnf3Instance) -> None:
    for ci, c in enumerate(f.clauses):
        pol: dict[int, int] = {}
        for v, neg in zip(c.z, c.l):
            if not 0 <= v < f.num_vars:
                raise ReductionError(f"clause {ci}: variable {v} out of range")
            if pol.setdefault(v, neg) != neg:
                raise ReductionError(f"clause {ci}: variable {v} appears with both signs")
        if len(pol) < 3 and not c.padded:
            raise ReductionError(f"clause {ci}: repeated variable, run sanitize_3cnf first")


def reduce_3sat(f: Cnf3Instance) -> ReductionOutput:
    _check_sanitized(f)
    nv = f.num_vars
    pattern = [[v + 1] for v in range(nv)]
    text = [[2 * (v + 1) - 1, 2 * (v + 1)] for v in range(nv)]
    for c in f.clauses:
        pattern.append([v + 1 for v in c.z])
        text.append([2 * (v + 1) - neg for v, neg in zip(c.z, c.l)])
    return ReductionOutput(IndetString(pattern), IndetString(text), nv)


def extract_assignment(out: ReductionOutput, witness: tuple[Assignment, Assignment]) -> list[bool]:
    """Variable v is true iff the text picked the even value at position v."""
    wp, wt = witness
    if not (out.pattern.is_valid(wp) and out.text.is_valid(wt) and op_iso(wp, wt)):
        raise ReductionError("witness is not an order-isomorphic valid assignment pair")
    return [wt[v] % 2 == 0 for v in range(out.var_offset)]


def inject_assignment(f: Cnf3Instance, valuation: Sequence[bool]) -> tuple[Assignment, Assignment]:
    """Build an order-isomorphic (pattern, text) assignment from a satisfying valuation."""
    if len(valuation) != f.num_vars:
        raise ReductionError(f"valuation has {len(valuation)} entries, expected {f.num_vars}")
    if not f.satisfied_by(valuation):
        raise ReductionError("valuation does not satisfy the formula")
    wp = [v + 1 for v in range(f.num_vars)]
    wt = [2 * (v + 1) if valuation[v] else 2 * (v + 1) - 1 for v in range(f.num_vars)]
    for c in f.clauses:
        v, neg = next((v, neg) for v, neg in zip(c.z, c.l) if valuation[v] != bool(neg))
        wp.append(v + 1)
        wt.append(2 * (v + 1) - neg)
    return tuple(wp), tuple(wt)


def to_dimacs_clauses(f: Cnf3Instance) -> list[tuple[int, ...]]:
    return [tuple((v + 1) * (-1 if neg else 1) for v, neg in c.literals()) for c in f.clauses]
