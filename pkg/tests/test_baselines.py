"""Weighted-sum and level-probe comparison algorithms."""

import json
from fractions import Fraction

import pytest

from bifront.baselines import (
    BaConfig,
    WeightPolicy,
    WsConfig,
    choose_weight,
    run_ba,
    run_ws,
    verify_ws_ip_identity,
)
from bifront.generate import make_assignment, make_diagonal, make_generic, make_knapsack
from bifront.model import BoipInstance, Box, Constraint, Objective, Point, Rel
from bifront.oracle import brute_force_frontier


def _tiny(points):
    k = len(points)
    return BoipInstance(
        name="tiny", kind="generic", n=k,
        objectives=(
            Objective(tuple(p[0] for p in points)),
            Objective(tuple(p[1] for p in points)),
        ),
        constraints=(Constraint(tuple([1] * k), Rel.EQ, 1),),
    )


ORACLE_INSTANCES = [
    _tiny([(0, 3), (1, 1), (3, 0)]),
    make_knapsack(8, seed=3),
    make_knapsack(12, seed=8),
    make_knapsack(14, seed=13),
    make_assignment(3, seed=7),
    make_generic(9, seed=11),
    make_generic(12, seed=8),
]


def _points(result):
    return [(p.z1, p.z2) for p in result.frontier]


def test_choose_weight_policies():
    box = Box(s=(0, 0), p=(10, 0), t=(0, 10))
    assert choose_weight(WeightPolicy.FW, box) == Fraction(1, 2)
    assert choose_weight(WeightPolicy.CW, box) == Fraction(1, 2)
    wide = Box(s=(0, 0), p=(10, 0), t=(0, 5))
    assert choose_weight(WeightPolicy.CW, wide) == Fraction(1, 3)
    off = Box(s=(5, 5), p=(20, 5), t=(5, 30))
    w = choose_weight(WeightPolicy.NW, off, t0=Point(0, 30), p0=Point(20, 0))
    assert w == Fraction(25, 40)
    with pytest.raises(ValueError):
        choose_weight(WeightPolicy.NW, off)
    flat = Box(s=(5, 0), p=(5, 0), t=(5, 10))
    with pytest.raises(ValueError):
        choose_weight(WeightPolicy.CW, flat)
    assert 0 < choose_weight(WeightPolicy.CW, flat, clamp=True) < 1


@pytest.mark.parametrize("policy", list(WeightPolicy))
def test_ws_matches_oracle(policy):
    for inst in ORACLE_INSTANCES:
        oracle = [(p.z1, p.z2) for p in brute_force_frontier(inst)]
        result = run_ws(inst, WsConfig(policy=policy))
        assert result.stats.completed
        assert _points(result) == oracle, f"{policy} on {inst.name}"
        assert verify_ws_ip_identity(result.stats)


def test_ws_first_probe_on_middle_point():
    # weighted sums (z1+z2)/2 are 1.5, 1.0, 1.5: the probe must pick (1,1)
    inst = _tiny([(0, 3), (1, 1), (3, 0)])
    result = run_ws(inst, WsConfig(policy=WeightPolicy.FW))
    assert result.log[0]["added"] == [[1, 1]]
    assert _points(result) == [(0, 3), (1, 1), (3, 0)]


def test_ws_finds_unsupported_point():
    # (3,3) is not optimal for any weight over the full set, only within
    # the eps-shrunk box, so completeness depends on the box bounds
    inst = _tiny([(0, 4), (3, 3), (4, 0)])
    for policy in WeightPolicy:
        result = run_ws(inst, WsConfig(policy=policy))
        assert _points(result) == [(0, 4), (3, 3), (4, 0)]


def test_ws_identity_components():
    inst = make_knapsack(12, seed=8)
    result = run_ws(inst, WsConfig())
    s = result.stats
    assert s.ip_count == 5 + 2 * (s.n_nondominated - 2) - s.e_count
    # every optimal probe adds exactly one point
    added = sum(len(r["added"]) for r in result.log)
    assert added == s.n_nondominated - 2


def test_ws_budget_zero_keeps_corners():
    inst = make_knapsack(10, seed=7)
    result = run_ws(inst, WsConfig(rbd_budget=0))
    assert not result.stats.completed
    assert len(result.frontier) == 2
    assert result.stats.ip_count == 4


def test_ws_truncation_yields_subset():
    inst = make_knapsack(12, seed=8)
    oracle = {(p.z1, p.z2) for p in brute_force_frontier(inst)}
    for budget in (1, 3, 5):
        result = run_ws(inst, WsConfig(rbd_budget=budget))
        assert set(_points(result)) <= oracle


def test_ws_no_elimination_still_complete():
    inst = make_knapsack(10, seed=25)
    result = run_ws(inst, WsConfig(elimination=False))
    assert _points(result) == [(p.z1, p.z2) for p in brute_force_frontier(inst)]
    assert result.stats.e_count == 0


def test_ba_matches_oracle():
    for inst in ORACLE_INSTANCES:
        oracle = [(p.z1, p.z2) for p in brute_force_frontier(inst)]
        result = run_ba(inst)
        assert result.stats.completed
        assert _points(result) == oracle, f"BA on {inst.name}"


def test_ba_trace_on_three_points():
    inst = _tiny([(0, 3), (1, 1), (3, 0)])
    result = run_ba(inst)
    s = result.stats
    assert _points(result) == [(0, 3), (1, 1), (3, 0)]
    first = result.log[0]
    assert first["level"] == 1
    assert first["added"] == [[1, 1]]
    # both child pairs are degenerate strips
    assert s.e_count == 2
    assert s.rbd_count == 1
    assert s.ip_count == 6  # 4 corner stages + the two-stage probe


def test_ba_adjacent_corners():
    inst = _tiny([(0, 1), (1, 0)])
    result = run_ba(inst)
    s = result.stats
    assert _points(result) == [(0, 1), (1, 0)]
    assert s.ip_count == 4
    assert s.e_count == 1
    assert s.rbd_count == 0


def test_ba_probes_upper_strip():
    """A point above the first midpoint level must still be found."""
    inst = _tiny([(0, 10), (1, 9), (10, 0)])
    result = run_ba(inst)
    assert _points(result) == [(0, 10), (1, 9), (10, 0)]
    # the first level is empty, so the run must have raised it and retried
    levels = [r["level"] for r in result.log]
    assert levels[0] == 5
    assert any(lv > 5 for lv in levels)
    assert result.stats.e_count == 2


def test_ba_two_models_per_feasible_probe():
    for inst in ORACLE_INSTANCES[1:4]:
        result = run_ba(inst)
        s = result.stats
        feasible = sum(1 for r in result.log if r["status"] == "optimal")
        assert s.ip_count == 4 + s.rbd_count + feasible
        assert len(result.log) == s.rbd_count


def test_ba_eliminations_track_frontier_size():
    for a in (3, 4, 5):
        inst = make_diagonal(a)
        result = run_ba(inst)
        s = result.stats
        assert s.completed
        assert s.n_nondominated == 2**a + 1
        assert s.e_count == s.n_nondominated - 1


def test_ba_budget_zero_keeps_corners():
    inst = make_knapsack(10, seed=7)
    result = run_ba(inst, BaConfig(rbd_budget=0))
    assert not result.stats.completed
    assert len(result.frontier) == 2


def test_baseline_runs_are_reproducible():
    inst = make_knapsack(12, seed=8)
    a, b = run_ws(inst, WsConfig(policy=WeightPolicy.CW)), run_ws(
        inst, WsConfig(policy=WeightPolicy.CW)
    )
    assert json.dumps(a.log) == json.dumps(b.log)
    c, d = run_ba(inst), run_ba(inst)
    assert json.dumps(c.log) == json.dumps(d.log)


def test_baseline_infeasible_instance():
    inst = BoipInstance(
        name="void", kind="generic", n=2,
        objectives=(Objective((1, 0)), Objective((0, 1))),
        constraints=(Constraint((1, 1), Rel.GE, 3),),
    )
    assert len(run_ws(inst).frontier) == 0
    assert len(run_ba(inst).frontier) == 0
