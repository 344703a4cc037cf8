"""Command-line front end.

Exit codes: 0 match / success, 1 definitive no-match, 2 usage or shape error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterator

from . import __version__
from .alternate import NotAlternating, encode_alternate, extract_alternate, preprocess_alternate
from .cnfsat import CnfError, read_dimacs, route_solver, solve_dpll, write_dimacs
from .corestr import CharSet, IndetString, ParseError, iter_positions, parse_string, read_strings
from .filtration import METHODS, SearchStats, ShapeError, iter_search, route, verify_window
from .hardness import ReductionError, extract_assignment, reduce_3sat, sanitize_3cnf
from .oracle import DEFAULT_BUDGET, BudgetExceeded, InstanceGenSpec, gen_instance, oracle_match
from .satencode import decode_model, encode_eq1, encode_eq2

SCHEMA_VERSION = 1

EXIT_MATCH, EXIT_NO_MATCH, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _schema(kind: str) -> str:
    return f"muoppm.{kind}/{SCHEMA_VERSION}"


def _load_string(inline: str | None, path: str | None, what: str) -> IndetString:
    if path is not None:
        if inline is not None:
            raise UsageError(f"give the {what} inline or with --{what}-file, not both")
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        strings = read_strings(text.splitlines())
        if not strings:
            raise UsageError(f"no {what} string in {path}")
        return strings[0]
    if inline is None:
        raise UsageError(f"missing {what}")
    return parse_string(inline)


def _stream_file(path: str) -> Iterator[CharSet]:
    """Every non-comment line of the file, read lazily, as one text."""
    handle = sys.stdin if path == "-" else open(path)
    try:
        count = 0
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            for pos in iter_positions(line, count):
                count += 1
                yield pos
    finally:
        if handle is not sys.stdin:
            handle.close()


def _emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _witness_json(wit):
    if wit is None:
        return None
    return {"pattern": list(wit[0]), "text": list(wit[1])}


# -- subcommands ------------------------------------------------------------

def cmd_verify(args) -> int:
    p = _load_string(args.pattern, args.pattern_file, "pattern")
    t = _load_string(args.text, args.text_file, "text")
    if len(p) != len(t):
        raise UsageError(f"verify needs equal lengths, got {len(p)} and {len(t)}")
    method = route(p, t, args.method)
    info: dict = {}
    ok, wit = verify_window(p, t, method, args.budget, info)
    if args.json:
        _emit_json({
            "schema": _schema("verify"),
            "match": ok,
            "method": method,
            "witness": _witness_json(wit),
            "solver": info or None,
        })
    else:
        print("match" if ok else "no-match")
        if wit is not None:
            print("pattern:", " ".join(map(str, wit[0])))
            print("text:   ", " ".join(map(str, wit[1])))
    return EXIT_MATCH if ok else EXIT_NO_MATCH


def cmd_search(args) -> int:
    p = _load_string(args.pattern, args.pattern_file, "pattern")
    if args.text_file is not None:
        if args.text is not None:
            raise UsageError("give the text inline or with --text-file, not both")
        text = _stream_file(args.text_file)
    elif args.text is not None:
        text = iter(parse_string(args.text).positions)
    else:
        raise UsageError("missing text")
    shift = len(p) - 1 if args.report == "end" else 0
    stats = SearchStats()
    candidates: list[int] = []
    hits = iter_search(p, text, args.method, not args.no_filter, args.budget, stats, candidates)
    found = []
    for start, wit, chosen in hits:
        if args.json:
            found.append({"position": start + shift, "method": chosen, "witness": _witness_json(wit)})
        else:
            print(start + shift)
    if stats.windows_total == 0:
        raise UsageError("pattern longer than text")
    if args.json:
        _emit_json({
            "schema": _schema("search"),
            "report": args.report,
            "positions": [f["position"] for f in found],
            "matches": found,
            "candidates": [c + shift for c in candidates],
            "stats": vars(stats),
        })
        n = len(found)
    else:
        n = stats.verified_matches
    return EXIT_MATCH if n else EXIT_NO_MATCH


def cmd_cnf(args) -> int:
    p = _load_string(args.pattern, args.pattern_file, "pattern")
    t = _load_string(args.text, args.text_file, "text")
    if len(p) != len(t):
        raise UsageError(f"cnf needs equal lengths, got {len(p)} and {len(t)}")
    if args.encoding == "eq1":
        if p.determinate:
            det, ind, det_is_pattern = p, t, True
        elif t.determinate:
            det, ind, det_is_pattern = t, p, False
        else:
            raise UsageError("eq1 needs the pattern or the text to be determinate")
        enc = encode_eq1(det, ind)
        formula = enc.formula
    elif args.encoding == "eq2":
        enc = encode_eq2(p, t)
        formula = enc.formula
    else:
        inst = preprocess_alternate(p, t)
        if inst.infeasible:
            raise UsageError("preprocessing already proves no match; nothing to encode")
        enc = encode_alternate(inst, args.adjacency)
        formula = enc.formula
    dimacs = write_dimacs(formula)
    result_lines = []
    code = EXIT_MATCH
    if args.solve:
        res = route_solver(formula) if args.encoding != "eq2" else solve_dpll(formula)
        if not res.satisfiable:
            result_lines.append("c result unsat")
            code = EXIT_NO_MATCH
        else:
            if args.encoding == "eq1":
                wy = decode_model(enc, res.model)
                wit = (det.values(), wy) if det_is_pattern else (wy, det.values())
            elif args.encoding == "eq2":
                wit = decode_model(enc, res.model)
            else:
                wit = extract_alternate(enc, res.model, inst)
            result_lines.append("c result sat")
            result_lines.append("c witness pattern " + " ".join(map(str, wit[0])))
            result_lines.append("c witness text " + " ".join(map(str, wit[1])))
    if args.out:
        Path(args.out).write_text(dimacs)
        for line in result_lines:
            print(line[2:])
    else:
        sys.stdout.write(dimacs)
        for line in result_lines:
            print(line)
    return code


def cmd_reduce(args) -> int:
    text = sys.stdin.read() if args.dimacs == "-" else Path(args.dimacs).read_text()
    raw = read_dimacs(text)
    inst = sanitize_3cnf(raw.clauses, raw.num_vars)
    out = reduce_3sat(inst)
    sidecar = {
        "schema": _schema("reduce"),
        "num_vars": inst.num_vars,
        "var_offset": out.var_offset,
        "clauses": [
            {
                "position": out.var_offset + c,
                "source_clause": inst.source_index[c],
                "literals": [(v + 1) * (-1 if neg else 1) for v, neg in cl.literals()],
                "padded": cl.padded,
            }
            for c, cl in enumerate(inst.clauses)
        ],
        "dropped_tautologies": sorted(set(range(len(raw.clauses))) - set(inst.source_index)),
    }
    if args.out_prefix:
        prefix = Path(args.out_prefix)
        prefix.with_name(prefix.name + ".pattern").write_text(str(out.pattern) + "\n")
        prefix.with_name(prefix.name + ".text").write_text(str(out.text) + "\n")
        prefix.with_name(prefix.name + ".json").write_text(
            json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    else:
        print(out.pattern)
        print(out.text)
    if not args.check:
        return EXIT_MATCH
    matched, wit = oracle_match(out.pattern, out.text, args.budget)
    sat = solve_dpll(raw).satisfiable if not raw.unsat_witness else False
    if matched != sat:
        print(f"inconsistent: op-match={matched} but sat={sat}", file=sys.stderr)
        return EXIT_ERROR
    if matched:
        valuation = extract_assignment(out, wit)
        print("op-match")
        print("valuation", " ".join(str(v + 1) if b else str(-(v + 1)) for v, b in enumerate(valuation)))
        return EXIT_MATCH
    print("no op-match")
    return EXIT_NO_MATCH


def cmd_oracle(args) -> int:
    p = _load_string(args.pattern, args.pattern_file, "pattern")
    t = _load_string(args.text, args.text_file, "text")
    if len(p) == len(t):
        ok, wit = oracle_match(p, t, args.budget)
        if args.json:
            _emit_json({"schema": _schema("oracle"), "match": ok, "witness": _witness_json(wit)})
        else:
            print("match" if ok else "no-match")
            if wit is not None:
                print("pattern:", " ".join(map(str, wit[0])))
                print("text:   ", " ".join(map(str, wit[1])))
        return EXIT_MATCH if ok else EXIT_NO_MATCH
    if len(p) > len(t):
        raise UsageError("pattern longer than text")
    shift = len(p) - 1 if args.report == "end" else 0
    positions = []
    m = len(p)
    for i in range(len(t) - m + 1):
        if oracle_match(p, t[i : i + m], args.budget)[0]:
            positions.append(i + shift)
    if args.json:
        _emit_json({"schema": _schema("oracle"), "report": args.report, "positions": positions})
    else:
        for pos in positions:
            print(pos)
    return EXIT_MATCH if positions else EXIT_NO_MATCH


def cmd_gen(args) -> int:
    spec = InstanceGenSpec(args.m, args.r_max, args.alphabet, args.seed, args.mode, args.n)
    x, y = gen_instance(spec)
    print(x)
    print(y)
    return EXIT_MATCH


# -- parser -----------------------------------------------------------------

def _add_pair(sp) -> None:
    sp.add_argument("pattern", nargs="?", help='pattern, e.g. "1 2|5 3 3"')
    sp.add_argument("text", nargs="?", help="text in the same format")
    sp.add_argument("--pattern-file", help="read the pattern from a file ('-' for stdin)")
    sp.add_argument("--text-file", help="read the text from a file ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="muoppm",
        description="Order-preserving pattern matching over indeterminate integer strings.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="oracle search budget (partial assignments)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")

    sp = sub.add_parser("verify", parents=[common], help="decide whether two equal-length strings op-match")
    _add_pair(sp)
    sp.add_argument("--method", choices=METHODS, default="auto")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", parents=[common], help="report every matching window of the text")
    _add_pair(sp)
    sp.add_argument("--method", choices=METHODS, default="auto")
    sp.add_argument("--no-filter", action="store_true", help="verify every window")
    sp.add_argument("--report", choices=("start", "end"), default="start")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("cnf", parents=[common], help="emit the CNF encoding of a verification instance")
    _add_pair(sp)
    sp.add_argument("--encoding", choices=("eq1", "eq2", "alternate"), default="eq2")
    sp.add_argument("--method", dest="encoding", choices=("eq1", "eq2", "alternate"),
                    help=argparse.SUPPRESS)
    sp.add_argument("--adjacency", action="store_true",
                    help="alternate only: constrain fixed-order pairs between neighbours only")
    sp.add_argument("--out", help="write DIMACS here instead of stdout")
    sp.add_argument("--solve", action="store_true", help="also solve and print the decoded witness")
    sp.set_defaults(func=cmd_cnf)

    sp = sub.add_parser("reduce", parents=[common], help="build the string pair for a 3CNF formula")
    sp.add_argument("dimacs", help="DIMACS cnf file ('-' for stdin)")
    sp.add_argument("--out-prefix", help="write PREFIX.pattern, PREFIX.text and PREFIX.json")
    sp.add_argument("--check", action="store_true",
                    help="compare the oracle verdict with the SAT verdict (small inputs only)")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("oracle", parents=[common], help="brute-force verify or search")
    _add_pair(sp)
    sp.add_argument("--report", choices=("start", "end"), default="start")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("gen", parents=[common], help="print a seeded random instance, one string per line")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None, help="length of the second string")
    sp.add_argument("--r-max", type=int, default=2)
    sp.add_argument("--alphabet", type=int, default=8)
    sp.add_argument("--mode", choices=("one-indet", "both-indet", "alternate", "determinate"),
                    default="both-indet")
    sp.set_defaults(func=cmd_gen)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, ShapeError, NotAlternating, CnfError, ReductionError,
            BudgetExceeded, ValueError, OSError) as exc:
        print(f"muoppm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
