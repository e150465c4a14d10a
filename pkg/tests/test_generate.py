"""Instance builders: shapes, determinism, and image-set guarantees."""

import pytest

from bifront.generate import make_assignment, make_diagonal, make_generic, make_knapsack
from bifront.model import Kind, Point, Rel, Sense
from bifront.oracle import brute_force_frontier


def test_knapsack_shape():
    inst = make_knapsack(10, seed=3)
    assert inst.kind is Kind.KNAPSACK
    assert inst.n == 10
    assert inst.original_sense == (Sense.MAX, Sense.MAX)
    assert len(inst.constraints) == 1
    row = inst.constraints[0]
    assert row.rel is Rel.LE
    assert row.rhs == sum(row.coeffs) // 2
    # profits are stored negated so the solver always minimizes
    assert all(c < 0 for o in inst.objectives for c in o.coeffs)
    assert all(w >= 1 for w in row.coeffs)


def test_assignment_shape():
    k = 4
    inst = make_assignment(k, seed=5)
    assert inst.kind is Kind.ASSIGNMENT
    assert inst.n == k * k
    assert len(inst.constraints) == 2 * k
    for row in inst.constraints:
        assert row.rel is Rel.EQ and row.rhs == 1
        assert sum(row.coeffs) == k
        assert set(row.coeffs) == {0, 1}
    # row constraints and column constraints cover each cell exactly twice
    cover = [0] * inst.n
    for row in inst.constraints:
        for i, c in enumerate(row.coeffs):
            cover[i] += c
    assert set(cover) == {2}


def test_generic_keeps_origin_feasible():
    for seed in (1, 2, 3):
        inst = make_generic(12, seed=seed)
        assert inst.kind is Kind.GENERIC
        for row in inst.constraints:
            assert row.rel is Rel.LE
            assert row.rhs >= 0  # x = 0 satisfies every row
        assert len(inst.constraints) == 4


def test_builders_are_deterministic():
    for build in (
        lambda: make_knapsack(9, seed=42),
        lambda: make_assignment(3, seed=42),
        lambda: make_generic(9, seed=42),
    ):
        a, b = build(), build()
        assert a == b


def test_different_seeds_differ():
    assert make_knapsack(9, seed=1) != make_knapsack(9, seed=2)


def test_diagonal_image_is_the_full_antidiagonal():
    for a in (3, 4):
        m = 2**a
        inst = make_diagonal(a)
        assert inst.n == m + 1
        front = brute_force_frontier(inst)
        assert list(front) == [Point(i, m - i) for i in range(m + 1)]


def test_builder_argument_validation():
    with pytest.raises(ValueError):
        make_knapsack(0, seed=1)
    with pytest.raises(ValueError):
        make_assignment(0, seed=1)
    with pytest.raises(ValueError):
        make_generic(0, seed=1)
    with pytest.raises(ValueError):
        make_diagonal(0)
