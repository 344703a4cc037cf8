import pytest

from muoppm.alternate import (
    AlternateInstance,
    ExtractionError,
    NotAlternating,
    ThresholdVarKey,
    check_pair,
    encode_alternate,
    extract_alternate,
    is_alternating,
    preprocess_alternate,
    solve_alternate,
)
from muoppm.cnfsat import solve_2sat, write_dimacs
from muoppm.corestr import IndetString, op_iso
from muoppm.oracle import oracle_match

from helpers import S, instances


def test_preprocess_merges_equal_determinate_characters():
    inst = preprocess_alternate(S("3 1|2 3"), S("4|7 5 6|7"))
    assert inst.x == ((3,), (1, 2))
    assert inst.y == ((7,), (5,))
    assert inst.remap == ((0, 2), (1,))
    assert not inst.infeasible


def test_preprocess_identity_without_equalities():
    x, y = S("1 3|7 4"), S("2|9 5 6")
    inst = preprocess_alternate(x, y)
    assert inst.x == x.positions and inst.y == y.positions
    assert inst.remap == ((0,), (1,), (2,))


def test_preprocess_empty_merge_is_infeasible():
    inst = preprocess_alternate(S("3 1|2 3"), S("4|7 5 6|8"))
    assert inst.infeasible
    assert solve_alternate(S("3 1|2 3"), S("4|7 5 6|8"))[0] is False
    assert not oracle_match(S("3 1|2 3"), S("4|7 5 6|8"))[0]


def test_preprocess_drops_one_sided_equality():
    # x[1] = 4 would require y[0] = 9, which y[0] cannot take
    inst = preprocess_alternate(S("4 2|4|6"), S("1|5 9"))
    assert inst.x[1] == (2, 6)


def test_preprocess_rejects_non_alternating():
    with pytest.raises(NotAlternating):
        preprocess_alternate(S("1|2 3"), S("1|2 3"))
    with pytest.raises(ValueError):
        preprocess_alternate(S("1 2"), S("1"))
    assert not is_alternating(S("1|2"), S("3|4"))


def test_type1_worked_pair():
    x, y = S("1 3|7"), S("2|9 5")
    inst = preprocess_alternate(x, y)
    enc = encode_alternate(inst)
    key = {k: v for v, k in enc.registry.items()}
    gb0 = key[ThresholdVarKey("x", 1, 0)]
    ga1 = key[ThresholdVarKey("y", 0, 1)]
    clauses = set(enc.formula.clauses)
    assert tuple(sorted((-gb0, -ga1))) in clauses
    assert tuple(sorted((gb0, ga1))) in clauses
    ok, (wx, wy), res = solve_alternate(x, y)
    assert ok and wy[0] == 2
    assert not res.model[ga1]
    assert oracle_match(x, y)[0]


def test_determinate_op_iso_has_only_forcing_and_consistency():
    enc = encode_alternate(preprocess_alternate(S("1 3 2"), S("10 30 20")))
    assert all(len(c) == 1 and c[0] > 0 for c in enc.formula.clauses)
    ok, wit, _ = solve_alternate(S("1 3 2"), S("10 30 20"))
    assert ok and wit == ((1, 3, 2), (10, 30, 20))


def test_check_pair():
    inst = preprocess_alternate(S("1 2"), S("9 3"))
    assert not check_pair(inst, 0, 1)
    assert solve_alternate(S("1 2"), S("9 3"))[0] is False
    inst = preprocess_alternate(S("1 2|0"), S("4|5 3"))
    assert check_pair(inst, 0, 1)
    with pytest.raises(ValueError):
        check_pair(inst, 1, 1)


def test_check_pair_matches_pairwise_oracle():
    for x, y in instances("alternate", 400, 6, 4, 8, seed0=31):
        inst = preprocess_alternate(x, y)
        if inst.infeasible:
            continue
        for b in range(len(inst)):
            for a in range(b):
                sub_x = IndetString([inst.x[a], inst.x[b]])
                sub_y = IndetString([inst.y[a], inst.y[b]])
                assert check_pair(inst, a, b) == oracle_match(sub_x, sub_y)[0]


def test_extraction_picks_largest_true_threshold():
    inst = AlternateInstance(((1, 2, 3, 4, 5),), ((7,),), ((0,),))
    enc = encode_alternate(inst)
    model = {1: True, 2: True, 3: True, 4: False, 5: False, 6: True}
    assert extract_alternate(enc, model, inst) == ((3,), (7,))
    with pytest.raises(ExtractionError):
        extract_alternate(enc, {1: True, 2: False, 3: True, 6: True}, inst)


def test_unmerged_equal_characters_are_refused():
    inst = AlternateInstance(((3,), (3,)), ((1, 2), (4,)), ((0,), (1,)))
    with pytest.raises(ValueError):
        encode_alternate(inst)


def test_equality_counterexample_is_decided_correctly():
    # a cross pair where the determinate characters can tie on one side
    x, y = S("3 3|5"), S("4|7 4")
    ok, wit, _ = solve_alternate(x, y)
    assert ok == oracle_match(x, y)[0] is True
    assert op_iso(*wit)
    x, y = S("3 3|5"), S("7 4")
    assert solve_alternate(x, y)[0] == oracle_match(x, y)[0] is False


def test_dimacs_meta_tags():
    enc = encode_alternate(preprocess_alternate(S("1 3|7"), S("2|9 5")))
    lines = write_dimacs(enc.formula).splitlines()
    assert "c meta 1 g s=x i=0 k=0" in lines
    assert "c meta 5 g s=y i=0 k=1" in lines


def test_pipeline_equals_oracle_with_and_without_adjacency():
    for x, y in instances("alternate", 3000, 6, 4, 10, seed0=32):
        expect = oracle_match(x, y)[0]
        plain = solve_alternate(x, y)
        adj = solve_alternate(x, y, adjacency=True)
        assert plain[0] == adj[0] == expect
        for ok, wit, _ in (plain, adj):
            if ok:
                assert x.is_valid(wit[0]) and y.is_valid(wit[1]) and op_iso(*wit)


def test_clause_shape_and_count():
    for x, y in instances("alternate", 1000, 8, 4, 12, seed0=33):
        inst = preprocess_alternate(x, y)
        if inst.infeasible:
            continue
        f = encode_alternate(inst).formula
        m, r = len(inst), max(len(p) for p in inst.x + inst.y)
        assert f.max_width <= 2
        assert len(f.clauses) <= 4 * r * max(m, 2) ** 2
        assert solve_2sat(f).satisfiable == solve_2sat(encode_alternate(inst, True).formula).satisfiable
