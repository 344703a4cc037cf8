"""Order-preserving pattern matching over indeterminate integer strings."""

__version__ = "0.1.0"

from .corestr import IndetString, ParseError, op_iso, parse_string, rank_signature, serialize_string
from .oracle import gen_instance, InstanceGenSpec, oracle_match, oracle_search
from .verify_indet import verify_greedy, verify_lis
from .satencode import encode_eq1, encode_eq2, solve_eq1, solve_eq2
from .alternate import encode_alternate, preprocess_alternate, solve_alternate
from .hardness import reduce_3sat, sanitize_3cnf
from .filtration import search

__all__ = [
    "IndetString",
    "InstanceGenSpec",
    "ParseError",
    "encode_alternate",
    "encode_eq1",
    "encode_eq2",
    "gen_instance",
    "op_iso",
    "oracle_match",
    "oracle_search",
    "parse_string",
    "preprocess_alternate",
    "rank_signature",
    "reduce_3sat",
    "sanitize_3cnf",
    "search",
    "serialize_string",
    "solve_alternate",
    "solve_eq1",
    "solve_eq2",
    "verify_greedy",
    "verify_lis",
]
