"""Seeded random instance builders.

Every builder is a pure function of its arguments: the same seed always
produces the same instance, which the experiment tooling relies on for
byte-identical reruns.
"""

from __future__ import annotations

import random

from .model import BoipInstance, Constraint, Kind, Objective, Rel, Sense


def make_knapsack(
    n: int,
    seed: int,
    profit_range: tuple[int, int] = (1, 100),
    weight_range: tuple[int, int] = (1, 100),
) -> BoipInstance:
    """Biobjective 0-1 knapsack: two profit rows to maximize, capacity
    half the total weight (rounded down)."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    p1 = [rng.randint(*profit_range) for _ in range(n)]
    p2 = [rng.randint(*profit_range) for _ in range(n)]
    w = [rng.randint(*weight_range) for _ in range(n)]
    cap = sum(w) // 2
    return BoipInstance(
        name=f"kp-n{n}-s{seed}",
        kind=Kind.KNAPSACK,
        n=n,
        objectives=(
            Objective(tuple(-c for c in p1)),
            Objective(tuple(-c for c in p2)),
        ),
        constraints=(Constraint(tuple(w), Rel.LE, cap),),
        original_sense=(Sense.MAX, Sense.MAX),
    )


def make_assignment(
    k: int,
    seed: int,
    cost_range: tuple[int, int] = (1, 100),
) -> BoipInstance:
    """Biobjective k-by-k assignment: two cost matrices to minimize over
    permutation matrices (row and column sums fixed to one)."""
    if k < 1:
        raise ValueError("k must be positive")
    rng = random.Random(seed)
    n = k * k
    c1 = [rng.randint(*cost_range) for _ in range(n)]
    c2 = [rng.randint(*cost_range) for _ in range(n)]
    rows = []
    for i in range(k):
        coeffs = [0] * n
        for j in range(k):
            coeffs[i * k + j] = 1
        rows.append(Constraint(tuple(coeffs), Rel.EQ, 1))
    for j in range(k):
        coeffs = [0] * n
        for i in range(k):
            coeffs[i * k + j] = 1
        rows.append(Constraint(tuple(coeffs), Rel.EQ, 1))
    return BoipInstance(
        name=f"ap-k{k}-s{seed}",
        kind=Kind.ASSIGNMENT,
        n=n,
        objectives=(Objective(tuple(c1)), Objective(tuple(c2))),
        constraints=tuple(rows),
    )


def make_generic(
    n: int,
    seed: int,
    m: int | None = None,
    coeff_range: tuple[int, int] = (-8, 12),
) -> BoipInstance:
    """Mixed-sign objectives with random <= rows; x = 0 stays feasible."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    if m is None:
        m = max(1, n // 3)
    o1 = [rng.randint(*coeff_range) for _ in range(n)]
    o2 = [rng.randint(*coeff_range) for _ in range(n)]
    rows = []
    for _ in range(m):
        coeffs = [rng.randint(*coeff_range) for _ in range(n)]
        pos = sum(c for c in coeffs if c > 0)
        rows.append(Constraint(tuple(coeffs), Rel.LE, rng.randint(0, max(1, pos))))
    return BoipInstance(
        name=f"gen-n{n}-s{seed}",
        kind=Kind.GENERIC,
        n=n,
        objectives=(Objective(tuple(o1)), Objective(tuple(o2))),
        constraints=tuple(rows),
    )


def make_diagonal(a: int) -> BoipInstance:
    """Instance whose feasible image set is exactly the antidiagonal
    {(i, 2^a - i) : 0 <= i <= 2^a}, via a pick-one constraint."""
    if a < 1:
        raise ValueError("a must be positive")
    m = 2 ** a
    n = m + 1
    return BoipInstance(
        name=f"diag-a{a}",
        kind=Kind.GENERIC,
        n=n,
        objectives=(
            Objective(tuple(range(n))),
            Objective(tuple(m - i for i in range(n))),
        ),
        constraints=(Constraint((1,) * n, Rel.EQ, 1),),
    )
