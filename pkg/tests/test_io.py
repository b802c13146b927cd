import json
from fractions import Fraction

import pytest

from hamming_centroid import (
    Instance,
    InstanceFormatError,
    PExponent,
    load_instance,
    parse_instance,
    save_instance,
    write_instance,
)
from hamming_centroid.core import BinaryStringSet, CostBudget
from hamming_centroid.io import (
    instance_to_json_dict,
    parse_instance_json,
    result_to_json_dict,
)
from hamming_centroid.exact import solve_bruteforce
from conftest import INTRO_ROWS


INTRO_TEXT = """\
# the running example
p 2/1
kp 56

1111111
1111000
0000100   # trailing comment
0000010
0000001
"""


def test_parse_text_instance():
    inst = parse_instance(INTRO_TEXT)
    assert inst.p == PExponent(2, 1)
    assert inst.budget.power == 56
    assert [s.text for s in inst.strings] == INTRO_ROWS


def test_parse_norm_budget_line():
    inst = parse_instance("p 2\nk 7.5\n01\n10\n")
    assert inst.budget.power == Fraction(225, 4)  # (15/2)^2
    inst2 = parse_instance("p 3/2\nk 2\n01\n")
    assert inst2.budget.norm == 2 and inst2.budget.power is None


def test_parse_without_budget():
    inst = parse_instance("p 1\n0\n1\n")
    assert inst.budget is None and inst.p.is_unit


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("1111\n0000\n", "line 1"),                 # missing p header
        ("p 2\np 3\n", "line 2"),                    # second header is not a string
        ("p 2\n01x1\n", "line 2"),
        ("p 2\n011\n01\n", "line 3"),                # length mismatch
        ("p 2\nkp -5\n01\n", "line 2"),
        ("p 2\n# only comments\n", "no strings"),
        ("p 0\n01\n", "line 1"),
    ],
)
def test_parse_errors_carry_line_numbers(text, fragment):
    with pytest.raises(InstanceFormatError, match=fragment):
        parse_instance(text)


def test_budget_line_must_precede_strings():
    with pytest.raises(InstanceFormatError):
        parse_instance("p 2\n01\nkp 4\n")


def test_text_round_trip():
    inst = parse_instance(INTRO_TEXT)
    again = parse_instance(write_instance(inst))
    assert again == inst


def test_json_round_trip():
    inst = parse_instance(INTRO_TEXT)
    doc = instance_to_json_dict(inst)
    assert doc["p"] == {"a": 2, "b": 1}
    assert doc["power_budget"] == 56
    again = parse_instance_json(json.dumps(doc))
    assert again == inst


def test_json_fractional_budget():
    inst = Instance(
        PExponent(2, 1),
        CostBudget.from_power(Fraction(5, 2)),
        BinaryStringSet.from_texts(["00", "11"]),
    )
    doc = instance_to_json_dict(inst)
    assert doc["power_budget"] == "5/2"
    assert parse_instance_json(json.dumps(doc)) == inst


def test_terms_budget_written_as_high_precision_norm(tmp_path):
    """Budgets that are sums of b-th roots go out as a decimal k line."""
    terms = CostBudget.from_power_terms(((6, 6), (24, 12)))
    inst = Instance(
        PExponent(3, 2), terms, BinaryStringSet.from_texts(["0101", "1010"])
    )
    text = write_instance(inst)
    assert "\nk " in text
    back = parse_instance(text)
    # the round-tripped budget must make the same integer-radius decisions
    p = inst.p
    assert back.budget.max_distance(p) == terms.max_distance(p)
    assert back.budget.max_distance(p, divisor=2) == terms.max_distance(p, divisor=2)


def test_file_round_trip(tmp_path):
    inst = parse_instance(INTRO_TEXT)
    txt = tmp_path / "inst.txt"
    js = tmp_path / "inst.json"
    save_instance(inst, str(txt))
    save_instance(inst, str(js))
    assert load_instance(str(txt)) == inst
    assert load_instance(str(js)) == inst


def test_json_sniffing_without_extension(tmp_path):
    inst = parse_instance("p 2\n01\n")
    path = tmp_path / "payload"
    path.write_text(json.dumps(instance_to_json_dict(inst)))
    assert load_instance(str(path)) == inst


def test_result_json_schema(intro):
    result = solve_bruteforce(intro, PExponent(2, 1))
    doc = result_to_json_dict(result, PExponent(2, 1), runtime_ms=1.25)
    assert doc["centroid"] == "0011000"
    assert doc["cost"] == 56 and isinstance(doc["cost"], int)
    assert doc["distance_vector"] == [5, 2, 3, 3, 3]
    assert doc["algorithm"] == "bruteforce"
    assert doc["runtime_ms"] == 1.25
    assert abs(doc["norm"] - 56 ** 0.5) < 1e-12


def test_result_json_fractional_norm(intro):
    p = PExponent(3, 2)
    result = solve_bruteforce(intro, p)
    doc = result_to_json_dict(result, p, runtime_ms=0.0)
    assert isinstance(doc["cost"], float)
    # norm = cost^(1/p) = cost^(2/3)
    assert abs(doc["norm"] - doc["cost"] ** (2 / 3)) < 1e-9
