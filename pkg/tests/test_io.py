"""Serialization round trips and formatting."""

import json
from fractions import Fraction

import pytest

from bifront.generate import make_assignment, make_knapsack
from bifront.io import (
    FormatError,
    dump_instance,
    format_fixed,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    rational_str,
    read_frontier_csv,
    write_frontier_csv,
    write_json,
    write_jsonl,
)
from bifront.model import Point, Sense, filter_nondominated


def test_rational_str():
    assert rational_str(Fraction(3, 2)) == "3/2"
    assert rational_str(Fraction(4, 2)) == "2"
    assert rational_str(5) == "5"


def test_format_fixed_rounding():
    assert format_fixed(Fraction(1, 2)) == "0.5000"
    assert format_fixed(Fraction(2, 3)) == "0.6667"
    assert format_fixed(Fraction(-2, 3)) == "-0.6667"
    assert format_fixed(Fraction(1, 3), places=2) == "0.33"
    assert format_fixed(0) == "0.0000"
    # exact half rounds to even, on the exact value rather than a float
    assert format_fixed(Fraction(1, 200000)) == "0.0000"
    assert format_fixed(Fraction(5, 100000)) == "0.0000"
    assert format_fixed(Fraction(15, 100000)) == "0.0002"
    assert format_fixed(Fraction(151, 1000000)) == "0.0002"


def test_instance_json_round_trip(tmp_path):
    inst = make_knapsack(6, seed=9)
    path = tmp_path / "kp.json"
    dump_instance(inst, path)
    back = load_instance(path)
    assert back == inst


def test_instance_round_trip_eq_rows(tmp_path):
    inst = make_assignment(3, seed=2)
    path = tmp_path / "ap.json"
    dump_instance(inst, path)
    assert load_instance(path) == inst


def test_dump_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    dump_instance(make_knapsack(8, seed=4), a)
    dump_instance(make_knapsack(8, seed=4), b)
    assert a.read_bytes() == b.read_bytes()


def test_instance_from_dict_sense_negation():
    raw = {
        "name": "m",
        "kind": "generic",
        "n": 2,
        "sense": ["max", "min"],
        "objectives": [
            {"coeffs": [3, 4], "offset": 1},
            {"coeffs": [1, 2], "offset": 0},
        ],
        "constraints": [{"coeffs": [1, 1], "rel": "LE", "rhs": 1}],
    }
    inst = instance_from_dict(raw)
    # the max objective is stored negated, offset included
    assert inst.objectives[0].coeffs == (-3, -4)
    assert inst.objectives[0].offset == -1
    assert inst.objectives[1].coeffs == (1, 2)
    rebuilt = instance_to_dict(inst)
    assert rebuilt["objectives"][0]["coeffs"] == [3, 4]
    assert rebuilt["sense"] == ["max", "min"]


def test_instance_from_dict_rejects_garbage():
    with pytest.raises(FormatError):
        instance_from_dict({"name": "x"})
    with pytest.raises(FormatError):
        instance_from_dict(
            {
                "name": "x",
                "kind": "generic",
                "n": 1,
                "sense": ["min", "min"],
                "objectives": [{"coeffs": [1]}],
                "constraints": [],
            }
        )


def test_frontier_csv_round_trip(tmp_path):
    fr = filter_nondominated([Point(0, 3), Point(1, 1), Point(3, 0)])
    path = tmp_path / "f.csv"
    write_frontier_csv(fr, path)
    assert path.read_text() == "z1,z2\n0,3\n1,1\n3,0\n"
    assert read_frontier_csv(path) == fr


def test_frontier_csv_max_sense(tmp_path):
    # min-space (-7,-2),(-3,-5) renders as profits, largest z1 first
    fr = filter_nondominated([Point(-7, -2), Point(-3, -5)])
    path = tmp_path / "f.csv"
    senses = (Sense.MAX, Sense.MAX)
    write_frontier_csv(fr, path, senses)
    assert path.read_text() == "z1,z2\n7,2\n3,5\n"
    assert read_frontier_csv(path, senses) == fr


def test_frontier_csv_rejects_dominated_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("z1,z2\n0,3\n1,4\n")
    with pytest.raises(FormatError):
        read_frontier_csv(path)
    path.write_text("a,b\n0,3\n")
    with pytest.raises(FormatError):
        read_frontier_csv(path)
    path.write_text("z1,z2\n0,x\n")
    with pytest.raises(FormatError):
        read_frontier_csv(path)


def test_write_json_and_jsonl_are_stable(tmp_path):
    p1 = tmp_path / "a.json"
    write_json({"b": 1, "a": 2}, p1)
    assert p1.read_text() == '{\n  "a": 2,\n  "b": 1\n}\n'
    p2 = tmp_path / "a.jsonl"
    write_jsonl([{"y": 1, "x": 0}, {"k": []}], p2)
    lines = p2.read_text().splitlines()
    assert [json.loads(s) for s in lines] == [{"x": 0, "y": 1}, {"k": []}]
    assert lines[0] == '{"x": 0, "y": 1}'
