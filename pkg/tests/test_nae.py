import random

import pytest

from helpers import CANONICAL_N3, random_nae_instance
from lb2p import NaeFormatError, brute_sat, nae_eval, parse_nae, serialize_nae
from lb2p.nae import NaeInstance, occurrence_slot


def test_parse_canonical():
    inst = parse_nae(CANONICAL_N3)
    assert inst.n == 3 and inst.k == 4
    assert inst.clauses == ((0, 1, 2),) * 4


def test_roundtrip():
    inst = parse_nae(CANONICAL_N3)
    assert parse_nae(serialize_nae(inst)) == inst


def test_occurrence_count_violation_names_variable():
    text = "p nae3 4 4\n1 2 3\n1 2 3\n1 2 4\n1 3 4\n"
    with pytest.raises(NaeFormatError) as exc:
        parse_nae(text)
    assert exc.value.kind == "occurrence-count"


def test_duplicate_variable_in_clause():
    with pytest.raises(NaeFormatError) as exc:
        parse_nae("p nae3 3 4\n1 1 2\n1 2 3\n1 2 3\n2 3 3\n")
    assert exc.value.kind == "duplicate-variable"


def test_bad_header():
    with pytest.raises(NaeFormatError) as exc:
        parse_nae("p cnf 3 4\n")
    assert exc.value.kind == "header"


def test_empty_instance_rejected():
    with pytest.raises(NaeFormatError) as exc:
        parse_nae("p nae3 0 0\n")
    assert exc.value.kind == "empty"


def test_out_of_range_variable():
    with pytest.raises(NaeFormatError) as exc:
        parse_nae("p nae3 3 4\n1 2 5\n1 2 3\n1 2 3\n1 2 3\n")
    assert exc.value.kind == "range"


def test_nae_eval():
    inst = parse_nae(CANONICAL_N3)
    assert nae_eval(inst, (0, 0, 1)) is True
    assert nae_eval(inst, (1, 1, 1)) is False
    assert nae_eval(inst, (0, 0, 0)) is False


def test_nae_eval_all_ones_false_on_any_instance():
    rng = random.Random(1)
    for n in (3, 6):
        inst = random_nae_instance(n, rng)
        assert nae_eval(inst, (1,) * n) is False


def test_brute_sat_canonical():
    inst = parse_nae(CANONICAL_N3)
    assert brute_sat(inst) == (0, 0, 1)


def test_brute_sat_absent_means_all_fail():
    inst = parse_nae(CANONICAL_N3)
    result = brute_sat(inst)
    if result is None:
        for m in range(1 << inst.n):
            a = tuple((m >> (inst.n - 1 - i)) & 1 for i in range(inst.n))
            assert not nae_eval(inst, a)
    else:
        assert nae_eval(inst, result)


def test_brute_sat_cap():
    rng = random.Random(2)
    inst = random_nae_instance(27, rng)
    with pytest.raises(ValueError):
        brute_sat(inst)


def test_occurrence_slots_scan_in_clause_order():
    inst = parse_nae(CANONICAL_N3)
    for var in range(3):
        assert [occurrence_slot(inst, var, j) for j in range(4)] == [1, 2, 3, 4]
    rng = random.Random(3)
    inst = random_nae_instance(6, rng)
    for var in range(6):
        slots = [occurrence_slot(inst, var, j) for j, c in enumerate(inst.clauses) if var in c]
        assert slots == [1, 2, 3, 4]


def test_generator_produces_valid_instances():
    rng = random.Random(4)
    for n in (3, 6, 9):
        inst = random_nae_instance(n, rng)
        assert isinstance(inst, NaeInstance)
        assert 3 * inst.k == 4 * inst.n
