"""Ground-truth frontiers by exhaustive enumeration.

The oracle is deliberately independent of the solver stack: it walks the
whole 0-1 cube (or the permutation set for assignment instances) and
keeps nothing but feasible image points, so equivalence tests compare
two genuinely different computations.
"""

from __future__ import annotations

import itertools
import math

from .model import BoipInstance, Frontier, Kind, Point, Rel, filter_nondominated

DEFAULT_CAP = 1 << 20


def _cube_frontier(instance: BoipInstance, cap: int) -> Frontier:
    n = instance.n
    if 1 << n > cap:
        raise ValueError(f"2^{n} assignments exceed the enumeration cap {cap}")
    rows = instance.constraints
    o1, o2 = instance.objectives
    x = [0] * n
    v1, v2 = o1.offset, o2.offset
    acc = [0] * len(rows)
    seen: set[tuple[int, int]] = set()

    def feasible() -> bool:
        for r, row in enumerate(rows):
            lhs = acc[r]
            if row.rel is Rel.LE:
                if lhs > row.rhs:
                    return False
            elif row.rel is Rel.GE:
                if lhs < row.rhs:
                    return False
            elif lhs != row.rhs:
                return False
        return True

    if feasible():
        seen.add((v1, v2))
    # gray-code walk: one variable flips per step, O(m) updates each
    for i in range(1, 1 << n):
        j = (i & -i).bit_length() - 1
        x[j] ^= 1
        sign = 1 if x[j] else -1
        v1 += sign * o1.coeffs[j]
        v2 += sign * o2.coeffs[j]
        for r, row in enumerate(rows):
            acc[r] += sign * row.coeffs[j]
        if feasible():
            seen.add((v1, v2))
    return filter_nondominated(Point(a, b) for a, b in seen)


def _assignment_frontier(instance: BoipInstance, cap: int) -> Frontier:
    k = math.isqrt(instance.n)
    if k * k != instance.n:
        raise ValueError("assignment instances need a square variable count")
    if math.factorial(k) > cap:
        raise ValueError(f"{k}! permutations exceed the enumeration cap {cap}")
    o1, o2 = instance.objectives
    seen: set[tuple[int, int]] = set()
    for perm in itertools.permutations(range(k)):
        x = [0] * instance.n
        v1, v2 = o1.offset, o2.offset
        for i, j in enumerate(perm):
            x[i * k + j] = 1
            v1 += o1.coeffs[i * k + j]
            v2 += o2.coeffs[i * k + j]
        if all(row.holds(x) for row in instance.constraints):
            seen.add((v1, v2))
    return filter_nondominated(Point(a, b) for a, b in seen)


def brute_force_frontier(instance: BoipInstance, cap: int = DEFAULT_CAP) -> Frontier:
    """Exact nondominated set of a small instance.

    Assignment instances are enumerated over the k! permutation
    matrices, which their constraints admit by construction; everything
    else walks all 2^n assignments. Raises ValueError when the
    enumeration space exceeds ``cap``. An infeasible instance yields an
    empty frontier.
    """
    if instance.kind is Kind.ASSIGNMENT:
        return _assignment_frontier(instance, cap)
    return _cube_frontier(instance, cap)
