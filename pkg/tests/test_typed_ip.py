import pytest

from hamming_centroid import (
    BinaryStringSet,
    CostBudget,
    PExponent,
    build_cnip,
    decode_centroid,
    extract_types,
    solve_bruteforce,
    solve_typed,
    solve_typed_bb,
)
from hamming_centroid.core import p_power_cost
from conftest import naive_best

P2 = PExponent(2, 1)
P32 = PExponent(3, 2)

# three strings, two column types: (0,0,1) on columns 1-3 and (0,1,0) on 4
TYPES_ROWS = ["0000", "0001", "1110"]


def S(*texts):
    return BinaryStringSet.from_texts(texts)


def types_set():
    return BinaryStringSet.from_texts(TYPES_ROWS)


def test_extract_types_worked_example():
    prof = extract_types(types_set())
    assert prof.n_types == 2
    assert prof.patterns == ((0, 0, 1), (0, 1, 0))
    assert prof.counts == (3, 1)
    assert prof.column_map == (0, 0, 0, 1)
    assert prof.ones_per_string == (0, 1, 3)
    assert prof.columns_of_type(0) == (1, 2, 3)
    assert prof.columns_of_type(1) == (4,)


def test_decode_places_ones_rightmost():
    prof = extract_types(types_set())
    assert decode_centroid((2, 0), prof).text == "0110"
    assert decode_centroid((1, 1), prof).text == "0011"
    assert decode_centroid((0, 0), prof).text == "0000"
    assert decode_centroid((3, 1), prof).text == "1111"


def test_decode_is_lex_smallest_for_its_counts():
    prof = extract_types(types_set())
    # among all strings with 2 ones of type 1 and none of type 2, 0110 is
    # the smallest: candidates are {0110, 1010, 1100}
    assert decode_centroid((2, 0), prof).text == min("0110", "1010", "1100")


def test_decode_validates_counts():
    prof = extract_types(types_set())
    with pytest.raises(ValueError):
        decode_centroid((4, 0), prof)
    with pytest.raises(ValueError):
        decode_centroid((1,), prof)


def test_cnip_model_worked_example():
    model = build_cnip(extract_types(types_set()), P2)
    assert model.E == (
        (1, 1, -1, 0, 0, 0),
        (1, -1, 0, -1, 0, 0),
        (-1, 1, 0, 0, -1, 0),
        (1, 1, 1, 1, 1, 1),
    )
    assert model.b == (0, -1, -3, 0)
    assert model.lower == (0, 0, 0, 0, 0, 4)
    assert model.upper == (3, 1, 4, 4, 4, 20)
    doc = model.to_json_dict()
    assert doc["objective"] == {
        "kind": "sum_of_powers",
        "exponent": {"a": 2, "b": 1},
        "over": "y-block",
    }


def test_cnip_intro_dimensions(intro):
    model = build_cnip(extract_types(intro), P2)
    assert len(model.E) == 6  # five distance rows plus the balance row
    assert len(model.E[0]) == 4 + 5 + 1
    assert model.b == (-7, -4, -1, -1, -1, 0)


def test_typed_solver_worked_example():
    r = solve_typed(types_set(), P2)
    assert r.cost.exact == 9
    assert r.centroid.text == "0010"
    assert r.algorithm == "typed-bb"
    # the runner-up count vector (2, 0) decodes to 0110 and costs more
    assert p_power_cost(decode_centroid((2, 0), extract_types(types_set())),
                        types_set(), P2).exact == 14


def test_typed_two_strings():
    r = solve_typed(S("00", "11"), P2)
    assert r.cost.exact == 2


def test_typed_intro(intro):
    r = solve_typed(intro, P2)
    assert r.centroid.text == "0011000" and r.cost.exact == 56


def test_typed_budget_decision(intro):
    assert solve_typed(intro, P2, CostBudget.from_power(56)) is not None
    assert solve_typed(intro, P2, CostBudget.from_power(55)) is None


def test_typed_bb_returns_counts():
    sol = solve_typed_bb(extract_types(types_set()), P2)
    assert sol.x == (1, 0)
    assert sol.objective.exact == 9


def test_node_bounds_never_exceed_subtree_optimum():
    """Every logged node bound must under-estimate the true optimum of its box
    (checked here on the root box = full problem)."""
    prof = extract_types(types_set())
    log = []
    sol = solve_typed_bb(prof, P2, node_log=log)
    assert log, "expected at least the root node"
    for lo, hi, bound in log:
        if lo == tuple(0 for _ in range(prof.n_types)) and hi == prof.counts:
            assert bound <= float(sol.objective.exact) + 1e-6


def test_typed_matches_bruteforce_random():
    import numpy as np

    from hamming_centroid.generator import gen_uniform

    rng = np.random.Generator(np.random.PCG64(2024))
    for _ in range(15):
        n = int(rng.integers(1, 10))
        m = int(rng.integers(1, 5))
        Sx = gen_uniform(n, m, int(rng.integers(0, 2 ** 63)))
        for p, tol in ((P2, 0), (P32, 1e-9)):
            a = solve_typed(Sx, p)
            b = solve_bruteforce(Sx, p)
            if tol == 0:
                assert a.cost.exact == b.cost.exact
            else:
                assert float(a.cost.approx) == pytest.approx(
                    float(b.cost.approx), rel=tol
                )


def test_typed_invariant_under_column_permutation():
    rows = ["110100", "011010", "110001"]
    perm = [3, 1, 5, 0, 2, 4]
    permuted = ["".join(r[q] for q in perm) for r in rows]
    a = solve_typed(BinaryStringSet.from_texts(rows), P2)
    b = solve_typed(BinaryStringSet.from_texts(permuted), P2)
    assert a.cost.exact == b.cost.exact


def test_typed_cost_against_naive():
    rows = ["10101", "01010", "11111", "00000"]
    best, _ = naive_best(rows, 2)
    assert solve_typed(BinaryStringSet.from_texts(rows), P2).cost.exact == best
