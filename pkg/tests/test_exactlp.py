"""Exact rational LP layer: linear solves, simplex, and basis certification."""

import random
from fractions import Fraction

import numpy as np
import pytest

from bifront._kernel import _purelp
from bifront.ipsolve import exactlp
from bifront.ipsolve.exactlp import (
    certify_basis,
    exact_solve_bounded,
    solve_int_jordan,
    solve_int_linear,
)

try:
    from scipy.optimize import linprog
except ImportError:  # pragma: no cover
    linprog = None


def test_solve_int_linear_hand_case():
    # 2x + y = 5, x - y = 1 -> x = 2, y = 1
    got = solve_int_linear([[2, 1], [1, -1]], [5, 1])
    assert got == [Fraction(2), Fraction(1)]


def test_solve_int_linear_singular():
    assert solve_int_linear([[1, 2], [2, 4]], [1, 2]) is None
    assert solve_int_linear([[0]], [1]) is None


def test_jordan_agrees_with_back_substitution():
    rng = random.Random(5)
    hits = 0
    for _ in range(800):
        m = rng.randint(1, 8)
        mat = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(m)]
        rhs = [rng.randint(-20, 20) for _ in range(m)]
        a = solve_int_linear(mat, rhs)
        b = solve_int_jordan(mat, rhs)
        assert (a is None) == (b is None)
        if a is None:
            continue
        nums, den = b
        assert den > 0
        assert [Fraction(v, den) for v in nums] == a
        hits += 1
    assert hits > 600


def test_jordan_empty_system():
    assert solve_int_jordan([], []) == ([], 1)


def _exact_to_float(v):
    return None if v is None else float(v)


@pytest.mark.skipif(linprog is None, reason="scipy not installed")
def test_exact_simplex_matches_reference():
    rng = random.Random(31)
    agreements = 0
    for _ in range(150):
        n, m = rng.randint(1, 8), rng.randint(1, 5)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        rhs = [rng.randint(-8, 15) for _ in range(m)]
        cost = [rng.randint(-9, 9) for _ in range(n)]
        eq = [1 if rng.random() < 0.25 else 0 for _ in range(m)]
        lo = [0] * n
        up: list = [1] * n
        st, val, xs = exact_solve_bounded(rows, rhs, cost, lo, up, eq)
        a = np.array(rows, dtype=float)
        mask = np.array(eq) == 0
        ref = linprog(
            np.array(cost, dtype=float),
            A_ub=a[mask] if mask.any() else None,
            b_ub=np.array(rhs, dtype=float)[mask] if mask.any() else None,
            A_eq=a[~mask] if (~mask).any() else None,
            b_eq=np.array(rhs, dtype=float)[~mask] if (~mask).any() else None,
            bounds=[(0, 1)] * n,
            method="highs",
        )
        if st == exactlp.OPTIMAL:
            assert ref.status == 0
            assert abs(float(val) - ref.fun) < 1e-7 * (1 + abs(ref.fun))
            agreements += 1
        elif st == exactlp.INFEASIBLE:
            assert ref.status == 2
            agreements += 1
        else:  # pragma: no cover - not expected on bounded problems
            raise AssertionError(f"unexpected status {st}")
    assert agreements == 150


def test_exact_simplex_respects_fixed_columns():
    # minimize -x1 - x2 with x1 fixed to 0
    st, val, xs = exact_solve_bounded(
        [[1, 1]], [2], [-1, -1], [0, 0], [0, 1], [0]
    )
    assert st == exactlp.OPTIMAL
    assert xs[0] == 0 and xs[1] == 1
    assert val == -1


def test_exact_simplex_alpha_column():
    # unbounded-above continuous column with a lower bound of zero
    # minimize a subject to 3 - a <= 0  ->  a = 3
    st, val, xs = exact_solve_bounded(
        [[-1]], [-3], [1], [0], [None], [0]
    )
    assert st == exactlp.OPTIMAL
    assert val == 3
    assert xs[0] == 3


def _certify_roundtrip(rng, n, m):
    """Run the float kernel, then certify its claim exactly."""
    rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
    rhs = [rng.randint(-8, 16) for _ in range(m)]
    cost = [rng.randint(-9, 9) for _ in range(n)]
    eq = [1 if rng.random() < 0.3 else 0 for _ in range(m)]
    lo = [0] * n
    up: list = [1] * n
    for j in range(n):
        if rng.random() < 0.15:
            v = rng.randint(0, 1)
            lo[j] = up[j] = v
    st, fval, fx, basis, flip, row_sign, _ = _purelp.solve_bounded_lp(
        np.array(rows, dtype=float),
        np.array(rhs, dtype=float),
        np.array(cost, dtype=float),
        np.array(lo, dtype=float),
        np.array(up, dtype=float),
        np.array(eq, dtype=float),
        500,
    )
    exact = exact_solve_bounded(rows, rhs, cost, lo, up, eq)
    if st == 0:
        cert = certify_basis(
            rows, rhs, cost, lo, up, eq, list(basis), list(flip),
            list(row_sign), phase=2,
        )
        assert cert is not None, "kernel optimum refused by the certifier"
        value, xs = cert
        assert exact[0] == exactlp.OPTIMAL
        assert value == exact[1]  # certified value is the exact optimum
        for j in range(n):
            assert Fraction(xs[j]) >= lo[j]
            assert Fraction(xs[j]) <= up[j]
        return "optimal"
    if st == 1:
        cert = certify_basis(
            rows, rhs, cost, lo, up, eq, list(basis), list(flip),
            list(row_sign), phase=1,
        )
        assert cert is not None and cert[0] > 0
        assert exact[0] == exactlp.INFEASIBLE
        return "infeasible"
    return "other"


def test_certifier_accepts_kernel_claims():
    rng = random.Random(1234)
    seen = {"optimal": 0, "infeasible": 0, "other": 0}
    for _ in range(300):
        n, m = rng.randint(1, 10), rng.randint(1, 6)
        seen[_certify_roundtrip(rng, n, m)] += 1
    assert seen["optimal"] > 100
    assert seen["infeasible"] > 20
    assert seen["other"] == 0


def test_certifier_rejects_wrong_basis():
    # x1 + x2 <= 1, minimize -x1: optimum picks x1. A basis claiming the
    # slack stays basic with both columns at bound is not dual feasible.
    rows = [[1, 1]]
    rhs = [1]
    cost = [-1, 0]
    n = 2
    cert = certify_basis(
        rows, rhs, cost, [0] * n, [1] * n, [0], [n], [0, 0, 0, 0], [1],
        phase=2,
    )
    assert cert is None


def test_certifier_rejects_primal_violation():
    # basis forces the slack negative: x fixed at upper bounds, row 2 <= 1
    rows = [[1, 1]]
    rhs = [1]
    cost = [0, 0]
    cert = certify_basis(
        rows, rhs, cost, [1, 1], [1, 1], [0], [2], [0, 0, 0, 0], [1],
        phase=2,
    )
    assert cert is None


def test_certifier_reduced_costs():
    # minimize -2x1 - x2 over x1 + x2 <= 1: optimum x1=1, slack basic at 0
    rows = [[1, 1]]
    rhs = [1]
    cost = [-2, -1]
    st, fval, fx, basis, flip, row_sign, _ = _purelp.solve_bounded_lp(
        np.array(rows, dtype=float),
        np.array(rhs, dtype=float),
        np.array(cost, dtype=float),
        np.zeros(2),
        np.ones(2),
        np.zeros(1),
        100,
    )
    assert st == 0
    cert = certify_basis(
        rows, rhs, cost, [0, 0], [1, 1], [0], list(basis), list(flip),
        list(row_sign), phase=2, want_rc=True,
    )
    value, xs, rc = cert
    assert value == -2
    # x2 is nonbasic at 0; forcing it in costs exactly 1 (swap with x1)
    assert rc[1] == 1
