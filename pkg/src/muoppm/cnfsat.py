"""CNF formulas, DIMACS I/O, a 2SAT solver and a small DPLL solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

Clause = tuple[int, ...]


class CnfError(ValueError):
    pass


class DecisionBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]
    var_meta: Mapping[int, str] = field(default_factory=dict)
    # set when the formula legitimately carries an empty clause (known unsat)
    unsat_witness: bool = False

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        object.__setattr__(self, "var_meta", dict(self.var_meta))
        for c in self.clauses:
            if not c and not self.unsat_witness:
                raise CnfError("empty clause in a formula not marked unsat_witness")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise CnfError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def max_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def satisfied_by(self, model: Mapping[int, bool]) -> bool:
        return all(any(model.get(abs(l), False) == (l > 0) for l in c) for c in self.clauses)


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: dict[int, bool] | None = None
    decisions: int = 0


# -- DIMACS -----------------------------------------------------------------

def write_dimacs(f: CnfFormula) -> str:
    lines = [f"c meta {v} {f.var_meta[v]}" for v in sorted(f.var_meta)]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    lines.extend(" ".join(map(str, c + (0,))) for c in f.clauses)
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    meta: dict[int, str] = {}
    clauses: list[Clause] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "%":
            continue
        if line.startswith("c"):
            parts = line.split(None, 3)
            if len(parts) >= 3 and parts[1] == "meta":
                try:
                    meta[int(parts[2])] = parts[3] if len(parts) > 3 else ""
                except ValueError:
                    raise CnfError(f"line {lineno}: bad meta comment {line!r}") from None
            continue
        if line.startswith("p"):
            fields = line.split()
            if num_vars is not None:
                raise CnfError(f"line {lineno}: duplicate header")
            if len(fields) != 4 or fields[1] != "cnf":
                raise CnfError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise CnfError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise CnfError(f"line {lineno}: negative counts in header")
            continue
        if num_vars is None:
            raise CnfError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            elif abs(lit) > num_vars:
                raise CnfError(f"line {lineno}: literal {lit} out of range 1..{num_vars}")
            else:
                pending.append(lit)
    if num_vars is None:
        raise CnfError("missing 'p cnf' header")
    if pending:
        raise CnfError("last clause is missing its 0 terminator")
    if len(clauses) != num_clauses:
        raise CnfError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    empty = any(not c for c in clauses)
    return CnfFormula(num_vars, tuple(clauses), meta, unsat_witness=empty)


# -- 2SAT -------------------------------------------------------------------

def _node(lit: int) -> int:
    # variable v -> node 2(v-1) for v, 2(v-1)+1 for ¬v
    return 2 * (abs(lit) - 1) + (lit < 0)


def solve_2sat(f: CnfFormula) -> SatResult:
    """Implication-graph SCC decision procedure, linear in the formula size."""
    n = 2 * f.num_vars
    adj: list[list[int]] = [[] for _ in range(n)]
    for c in f.clauses:
        if len(c) > 2:
            raise CnfError(f"clause {c} has more than 2 literals")
        if not c:
            return SatResult(False)
        a, b = (c[0], c[0]) if len(c) == 1 else c
        # (a ∨ b): ¬a ⇒ b, ¬b ⇒ a
        adj[_node(a) ^ 1].append(_node(b))
        adj[_node(b) ^ 1].append(_node(a))

    # iterative Tarjan; components are numbered in reverse topological order
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            edges = adj[v]
            if k < len(edges):
                work[-1] = (v, k + 1)
                w = edges[k]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1

    model = {}
    for v in range(f.num_vars):
        pos, neg = comp[2 * v], comp[2 * v + 1]
        if pos == neg:
            return SatResult(False)
        # the literal whose component comes later topologically is set true
        model[v + 1] = pos < neg
    return SatResult(True, model)


# -- DPLL -------------------------------------------------------------------

def solve_dpll(f: CnfFormula, max_decisions: int = 10**6) -> SatResult:
    """DPLL with watched-literal unit propagation and pure-literal elimination.

    Pure literals are fixed once at the root. Branching takes the lowest
    unassigned variable, trying true first, with chronological backtracking.
    """
    nv = f.num_vars
    clauses = [list(dict.fromkeys(c)) for c in f.clauses]
    if any(not c for c in clauses):
        return SatResult(False)
    # value[v]: None unassigned, else bool
    value: list[bool | None] = [None] * (nv + 1)
    trail: list[int] = []

    def lit_val(l: int):
        v = value[abs(l)]
        return None if v is None else (v == (l > 0))

    def assign(l: int) -> None:
        value[abs(l)] = l > 0
        trail.append(l)

    units: list[int] = []
    watches: dict[int, list[int]] = {}
    for ci, c in enumerate(clauses):
        if len(c) == 1:
            units.append(c[0])
        else:
            watches.setdefault(c[0], []).append(ci)
            watches.setdefault(c[1], []).append(ci)

    def propagate(queue: list[int]) -> bool:
        """Assign queued literals and everything they force; False on conflict."""
        head = len(trail)
        for l in queue:
            cur = lit_val(l)
            if cur is False:
                return False
            if cur is None:
                assign(l)
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            watching = watches.get(false_lit)
            if not watching:
                continue
            keep = []
            conflict = False
            for idx, ci in enumerate(watching):
                if conflict:
                    keep.append(ci)
                    continue
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                other = c[0]
                if lit_val(other) is True:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if lit_val(c[k]) is not False:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    ov = lit_val(other)
                    if ov is None:
                        assign(other)
                    elif ov is False:
                        conflict = True
            watches[false_lit] = keep
            if conflict:
                return False
        return True

    # pure literals at the root
    polarity: dict[int, set[bool]] = {}
    for c in clauses:
        for l in c:
            polarity.setdefault(abs(l), set()).add(l > 0)
    pure = [v if pols == {True} else -v for v, pols in polarity.items() if len(pols) == 1]
    for v in range(1, nv + 1):
        if v not in polarity:
            pure.append(v)

    if not propagate(units + pure):
        return SatResult(False)

    decisions = 0
    # each frame: (trail length before the decision, decided literal)
    frames: list[tuple[int, int]] = []
    next_var = 1
    while True:
        while next_var <= nv and value[next_var] is not None:
            next_var += 1
        if next_var > nv:
            model = {v: bool(value[v]) for v in range(1, nv + 1)}
            return SatResult(True, model, decisions)
        decisions += 1
        if decisions > max_decisions:
            raise DecisionBudgetExceeded(f"more than {max_decisions} decisions")
        frames.append((len(trail), next_var))
        ok = propagate([next_var])
        while not ok:
            # undo to the most recent decision that still has its false branch
            while frames and frames[-1][1] < 0:
                mark, _ = frames.pop()
                _undo(trail, value, mark)
            if not frames:
                return SatResult(False, None, decisions)
            mark, lit = frames.pop()
            _undo(trail, value, mark)
            frames.append((mark, -lit))
            next_var = 1
            ok = propagate([-lit])


def _undo(trail: list[int], value: list, mark: int) -> None:
    while len(trail) > mark:
        value[abs(trail.pop())] = None


def route_solver(f: CnfFormula) -> SatResult:
    """2SAT when every clause has at most two literals, DPLL otherwise."""
    return solve_2sat(f) if f.max_width <= 2 else solve_dpll(f)


def formula_from_clauses(clauses: Iterable[Iterable[int]], num_vars: int | None = None) -> CnfFormula:
    cl = tuple(tuple(c) for c in clauses)
    if num_vars is None:
        num_vars = max((abs(l) for c in cl for l in c), default=0)
    return CnfFormula(num_vars, cl)
