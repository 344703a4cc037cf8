"""Alternate instances: both strings may be indeterminate, never at the same index.

Each position of each string gets threshold variables g[k] = "the chosen
character is >= the k-th smallest candidate". Downward closure plus a forced
g[0] makes every model pick exactly one character per position, and each
pair of positions contributes a handful of 2-literal clauses, so the whole
instance is decided by the 2SAT solver.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Mapping

from .cnfsat import CnfFormula, SatResult, solve_2sat
from .corestr import Assignment, CharSet, IndetString, op_iso, sign
from .verify_indet import intersect_sorted


class NotAlternating(ValueError):
    pass


class ExtractionError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class ThresholdVarKey:
    string_id: str  # "x" or "y"
    i: int
    k: int

    def tag(self) -> str:
        return f"g s={self.string_id} i={self.i} k={self.k}"


@dataclass(frozen=True)
class AlternateInstance:
    x: tuple[CharSet, ...]
    y: tuple[CharSet, ...]
    # remap[i] lists the original positions merged into position i
    remap: tuple[tuple[int, ...], ...]
    infeasible: bool = False

    def __len__(self) -> int:
        return len(self.x)


def is_alternating(x: IndetString, y: IndetString) -> bool:
    return len(x) == len(y) and all(
        len(a) == 1 or len(b) == 1 for a, b in zip(x.positions, y.positions)
    )


def _merge_equal(xs, ys, members):
    """Union positions whose determinate characters coincide in the same string."""
    n = len(xs)
    parent = list(range(n))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for side in (xs, ys):
        first: dict[int, int] = {}
        for i, s in enumerate(side):
            if len(s) == 1:
                j = first.setdefault(s[0], i)
                if j != i:
                    parent[find(i)] = find(j)
    if all(find(i) == i for i in range(n)):
        return xs, ys, members, False

    roots: dict[int, int] = {}
    nx, ny, nm = [], [], []
    for i in range(n):
        r = find(i)
        if r not in roots:
            roots[r] = len(nx)
            nx.append(xs[i])
            ny.append(ys[i])
            nm.append(list(members[i]))
        else:
            g = roots[r]
            nx[g] = intersect_sorted(nx[g], xs[i])
            ny[g] = intersect_sorted(ny[g], ys[i])
            nm[g].extend(members[i])
    return nx, ny, nm, True


def _drop_one_sided(xs, ys) -> bool:
    """Remove a cross-pair equality candidate whose partner equality is impossible."""
    changed = False
    n = len(xs)
    for p in range(n):
        if len(xs[p]) != 1 or len(ys[p]) == 1:
            continue
        a = xs[p][0]
        for q in range(n):
            if len(ys[q]) != 1 or len(xs[q]) == 1:
                continue
            b = ys[q][0]
            # x[q] = a forces y[p] = b and vice versa
            a_in = a in xs[q]
            b_in = b in ys[p]
            if a_in and not b_in:
                xs[q] = tuple(c for c in xs[q] if c != a)
                changed = True
            elif b_in and not a_in:
                ys[p] = tuple(c for c in ys[p] if c != b)
                changed = True
    return changed


def preprocess_alternate(x: IndetString, y: IndetString) -> AlternateInstance:
    """Merge positions with equal determinate characters and drop impossible
    cross equalities, until neither step changes anything."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if not is_alternating(x, y):
        raise NotAlternating("some index is indeterminate in both strings")
    xs, ys = list(x.positions), list(y.positions)
    members = [[i] for i in range(len(xs))]
    while True:
        xs, ys, members, merged = _merge_equal(xs, ys, members)
        if any(not s for s in xs) or any(not s for s in ys):
            return AlternateInstance(tuple(xs), tuple(ys), tuple(map(tuple, members)), True)
        dropped = _drop_one_sided(xs, ys)
        if not merged and not dropped:
            break
    return AlternateInstance(tuple(xs), tuple(ys), tuple(tuple(sorted(m)) for m in members))


def check_pair(inst: AlternateInstance, alpha: int, beta: int) -> bool:
    """True iff some choice at the two positions is order-consistent in both strings."""
    if alpha == beta:
        raise ValueError("positions must differ")
    for xa in inst.x[alpha]:
        for xb in inst.x[beta]:
            s = sign(xa - xb)
            for ya in inst.y[alpha]:
                for yb in inst.y[beta]:
                    if sign(ya - yb) == s:
                        return True
    return False


@dataclass(frozen=True)
class AlternateEncoding:
    formula: CnfFormula
    registry: Mapping[int, ThresholdVarKey]
    # ids[s][i] = variable ids of position i in string s, by ascending k
    ids: Mapping[str, tuple[tuple[int, ...], ...]]


class _Builder:
    def __init__(self):
        self.clauses: list[tuple[int, ...]] = []
        self.seen: set[tuple[int, ...]] = set()
        self.empty = False

    def add(self, *lits: int) -> None:
        cl = tuple(sorted(set(lits)))
        if not cl:
            self.empty = True
        if cl not in self.seen:
            self.seen.add(cl)
            self.clauses.append(cl)

    def iff_not(self, u: int | None, v: int | None) -> None:
        """u ⇔ ¬v, where None stands for the constant false."""
        if u is None and v is None:
            self.add()
        elif u is None:
            self.add(v)
        elif v is None:
            self.add(u)
        else:
            self.add(-u, -v)
            self.add(u, v)


def _first(cands: CharSet, value: int, strict: bool) -> int | None:
    k = bisect_right(cands, value) if strict else bisect_left(cands, value)
    return k if k < len(cands) else None


def encode_alternate(inst: AlternateInstance, adjacency: bool = False) -> AlternateEncoding:
    """2CNF over threshold variables.

    With `adjacency` the pairs whose order is fixed by one determinate string
    are only constrained between neighbours in that string's sorted order;
    transitivity covers the rest.
    """
    m = len(inst)
    registry: dict[int, ThresholdVarKey] = {}
    ids: dict[str, list[tuple[int, ...]]] = {"x": [], "y": []}
    nxt = 1
    for s, side in (("x", inst.x), ("y", inst.y)):
        for i, cands in enumerate(side):
            row = []
            for k in range(len(cands)):
                registry[nxt] = ThresholdVarKey(s, i, k)
                row.append(nxt)
                nxt += 1
            ids[s].append(tuple(row))
    g = {s: ids[s] for s in ids}
    cands = {"x": inst.x, "y": inst.y}
    b = _Builder()

    for s in ("x", "y"):
        for i in range(m):
            row = g[s][i]
            b.add(row[0])
            for k in range(1, len(row)):
                b.add(-row[k], row[k - 1])

    def var(s: str, i: int, k: int | None) -> int | None:
        return None if k is None else g[s][i][k]

    def fixed_pair(f: str, o: str, alpha: int, beta: int) -> None:
        # string f is determinate at both positions, o carries the choices
        a, bb = cands[f][alpha][0], cands[f][beta][0]
        if a == bb:
            raise ValueError(
                f"{f}[{alpha}] == {f}[{beta}]: instance was not run through preprocess_alternate")
        if a < bb:
            alpha, beta = beta, alpha
        # now f[alpha] > f[beta]: o[alpha] must exceed o[beta]
        for i, c in enumerate(cands[o][beta]):
            j = _first(cands[o][alpha], c, strict=True)
            if j is None:
                b.add(-var(o, beta, i))
            else:
                b.add(-var(o, beta, i), var(o, alpha, j))

    def crossed_pair(p: int, q: int) -> None:
        # x determinate at p, y determinate at q, the other sides indeterminate
        a, bb = cands["x"][p][0], cands["y"][q][0]
        xq, yp = cands["x"][q], cands["y"][p]
        x_gt = var("x", q, _first(xq, a, strict=True))
        x_ge = var("x", q, _first(xq, a, strict=False))
        y_gt = var("y", p, _first(yp, bb, strict=True))
        y_ge = var("y", p, _first(yp, bb, strict=False))
        # x[q] > x[p]  <=>  y[q] > y[p]  <=>  not y[p] >= b
        b.iff_not(x_gt, y_ge)
        # x[q] >= x[p] <=>  y[q] >= y[p] <=>  not y[p] > b
        b.iff_not(x_ge, y_gt)

    def det(s: str, i: int) -> bool:
        return len(cands[s][i]) == 1

    for beta in range(m):
        for alpha in range(beta):
            if det("x", alpha) and det("x", beta) and det("y", alpha) and det("y", beta):
                # nothing to choose: the pair is either consistent or refutes the instance
                sx = sign(cands["x"][alpha][0] - cands["x"][beta][0])
                if sx != sign(cands["y"][alpha][0] - cands["y"][beta][0]):
                    b.add()
                continue
            if det("x", alpha) and det("x", beta):
                if not adjacency:
                    fixed_pair("x", "y", alpha, beta)
            elif det("y", alpha) and det("y", beta):
                if not adjacency:
                    fixed_pair("y", "x", alpha, beta)
            elif det("x", alpha):
                crossed_pair(alpha, beta)
            else:
                crossed_pair(beta, alpha)

    if adjacency:
        for f, o in (("x", "y"), ("y", "x")):
            chain = sorted((i for i in range(m) if det(f, i)), key=lambda i: cands[f][i][0])
            for u, v in zip(chain, chain[1:]):
                if not (det(o, u) and det(o, v)):
                    fixed_pair(f, o, u, v)

    formula = CnfFormula(
        nxt - 1,
        tuple(b.clauses),
        {v: k.tag() for v, k in registry.items()},
        unsat_witness=b.empty,
    )
    return AlternateEncoding(formula, registry, {s: tuple(r) for s, r in ids.items()})


def extract_alternate(
    enc: AlternateEncoding, model: Mapping[int, bool], inst: AlternateInstance
) -> tuple[Assignment, Assignment]:
    """Read the chosen character of every position back out of a model and
    expand merged positions to the original indexing."""
    total = sum(len(grp) for grp in inst.remap)
    out = {"x": [0] * total, "y": [0] * total}
    for s, side in (("x", inst.x), ("y", inst.y)):
        for i, row in enumerate(enc.ids[s]):
            bits = [bool(model.get(v)) for v in row]
            k = max((k for k, t in enumerate(bits) if t), default=None)
            if k is None or not all(bits[: k + 1]):
                raise ExtractionError(f"thresholds of {s}[{i}] are not downward closed: {bits}")
            for orig in inst.remap[i]:
                out[s][orig] = side[i][k]
    return tuple(out["x"]), tuple(out["y"])


def solve_alternate(
    x: IndetString, y: IndetString, adjacency: bool = False
) -> tuple[bool, tuple[Assignment, Assignment] | None, SatResult | None]:
    """Preprocess, gate on pair incompatibility, encode, solve and extract."""
    inst = preprocess_alternate(x, y)
    if inst.infeasible:
        return False, None, None
    m = len(inst)
    for beta in range(m):
        for alpha in range(beta):
            if not check_pair(inst, alpha, beta):
                return False, None, None
    enc = encode_alternate(inst, adjacency)
    res = solve_2sat(enc.formula)
    if not res.satisfiable:
        return False, None, res
    wx, wy = extract_alternate(enc, res.model, inst)
    if not (x.is_valid(wx) and y.is_valid(wy) and op_iso(wx, wy)):
        raise ExtractionError("extracted pair is not an order-isomorphic valid assignment")
    return True, (wx, wy), res
