"""Exact branch and bound over the binary variables.

The float kernel proposes optimal bases and branching variables; exact
rational arithmetic confirms every decision that could lose an optimum.
Pruning, node closure and infeasibility conclusions are only ever taken
from a certified basis or from the exact simplex, so a solver answer is
correct even when the float path misjudges a bound. Mis-trusting a float
bound in the other direction merely explores a node that could have been
cut, which costs time but never correctness.

Value ties between incumbents are broken toward the lexicographically
smallest 0-1 vector among the candidates the search encounters; subtrees
whose exact bound cannot strictly improve the incumbent are pruned.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .. import _kernel
from ..model import BoipInstance, Point, Rel, evaluate_objectives, is_feasible
from . import exactlp
from .lpdata import (
    CompiledIp,
    LinearObjective,
    MinAlphaObjective,
    SingleObjectiveIP,
    ZBound,
    compile_ip,
)


class Status(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    TIMED_OUT = "timed_out"


class SolverError(RuntimeError):
    """An LP relaxation behaved impossibly for a compiled 0-1 model."""


@dataclass(frozen=True)
class SolverBudget:
    wall_seconds: Optional[float] = None
    node_limit: Optional[int] = None


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    x: Optional[tuple[int, ...]]
    value: Optional[Fraction]
    nodes: int
    exact_fallbacks: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.OPTIMAL


_FRAC_TOL = 1e-6
_HALF = Fraction(1, 2)


def _candidate_value(compiled: CompiledIp, x: tuple[int, ...]) -> Fraction:
    obj = compiled.sip.objective
    if isinstance(obj, MinAlphaObjective):
        z = evaluate_objectives(compiled.sip.instance, x)
        return max(
            (z[0] - obj.reference[0]) / obj.direction[0],
            (z[1] - obj.reference[1]) / obj.direction[1],
        )
    return Fraction(sum(c * xi for c, xi in zip(obj.coeffs, x)) + obj.offset)


def _lift_alpha_bound(obj: MinAlphaObjective, bound: Fraction) -> Fraction:
    """Round a relaxation bound up to the next value an integer point can take.

    The goal value at any 0-1 vector is max_i (z_i - s_i) / d_i with both
    z_i integral, so it always lies on the union of the two arithmetic
    grids (t - s_i) / d_i, t integer. Lifting a lower bound to the
    nearest grid point at or above it is therefore exact.
    """
    lifted = None
    for s_i, d_i in zip(obj.reference, obj.direction):
        t = math.ceil(s_i + bound * d_i)
        cand = (t - s_i) / d_i
        if lifted is None or cand < lifted:
            lifted = cand
    return lifted


def _candidate_feasible(sip: SingleObjectiveIP, x: tuple[int, ...]) -> bool:
    """Exact feasibility of a 0-1 vector for the whole subproblem."""
    if not is_feasible(sip.instance, x):
        return False
    for row in sip.extra_rows:
        if not row.holds(x):
            return False
    if sip.z_bounds:
        z = evaluate_objectives(sip.instance, x)
        for zb in sip.z_bounds:
            v = Fraction(z[zb.component])
            if zb.rel is Rel.LE:
                if v > zb.value:
                    return False
            elif zb.rel is Rel.GE:
                if v < zb.value:
                    return False
            elif v != zb.value:
                return False
    return True


def solve(
    sip: SingleObjectiveIP,
    budget: Optional[SolverBudget] = None,
    lp_mode: str = "certified",
) -> SolveOutcome:
    """Minimize a single-objective subproblem over the binary feasible set.

    lp_mode "certified" runs the float kernel with exact certification;
    "exact" solves every relaxation in rational arithmetic.
    """
    if lp_mode not in ("certified", "exact"):
        raise ValueError(f"unknown lp_mode {lp_mode!r}")
    compiled = compile_ip(sip)
    use_float = lp_mode == "certified" and compiled.float_ok

    node_limit = budget.node_limit if budget else None
    deadline = None
    if budget and budget.wall_seconds is not None:
        deadline = time.monotonic() + budget.wall_seconds

    best_x: Optional[tuple[int, ...]] = None
    best_val: Optional[Fraction] = None
    nodes = 0
    fallbacks = 0
    timed_out = False
    stack: list[tuple] = [()]

    alpha_obj = (
        sip.objective if isinstance(sip.objective, MinAlphaObjective) else None
    )
    grid_step = (
        float(min(Fraction(1) / d for d in alpha_obj.direction))
        if alpha_obj is not None
        else 0.0
    )

    def prune_ok(bound: Fraction) -> bool:
        if best_val is None:
            return False
        if compiled.integral_objective:
            return bound > best_val - 1
        if alpha_obj is not None:
            bound = _lift_alpha_bound(alpha_obj, bound)
        return bound >= best_val

    def accept(x_int: tuple[int, ...]):
        nonlocal best_x, best_val
        val = _candidate_value(compiled, x_int)
        if (
            best_val is None
            or val < best_val
            or (val == best_val and x_int < best_x)
        ):
            best_x, best_val = x_int, val

    def settle_exact(bound: Fraction, xs) -> int:
        """Close the node or return a branch variable, given exact LP data."""
        if prune_ok(bound):
            return -1
        for j in range(compiled.n_bin):
            v = xs[j]
            if v != 0 and v != 1:
                return j  # lowest fractional index keeps runs reproducible
        accept(tuple(int(xs[j]) for j in range(compiled.n_bin)))
        return -1

    def try_rounding(xs):
        """Probe rounded variants of a relaxation optimum as incumbents."""
        vals = [xs[j] for j in range(compiled.n_bin)]
        seen = set()
        for cand in (
            tuple(1 if v >= _HALF else 0 for v in vals),
            tuple(1 if v == 1 else 0 for v in vals),
            tuple(0 if v == 0 else 1 for v in vals),
        ):
            if cand not in seen:
                seen.add(cand)
                if _candidate_feasible(sip, cand):
                    accept(cand)

    if sip.hint is not None and _candidate_feasible(sip, sip.hint):
        accept(sip.hint)

    while stack:
        if node_limit is not None and nodes >= node_limit:
            timed_out = True
            break
        if deadline is not None and time.monotonic() > deadline:
            timed_out = True
            break
        fixes = stack.pop()
        nodes += 1

        branch_var = -1
        need_exact = not use_float

        if use_float:
            lo_f, up_f = compiled.node_bounds_np(fixes)
            st, fval, fx, basis, flip, row_sign, _ = _kernel.solve_bounded_lp(
                compiled.a_np,
                compiled.b_np,
                compiled.cost_np,
                lo_f,
                up_f,
                compiled.eq_np,
                compiled.max_iters,
            )
            if st == _kernel.OPTIMAL:
                # the root is always settled exactly so its relaxation can
                # seed rounding heuristics and reduced-cost fixings
                wants_cert = not fixes
                if best_val is not None and not wants_cert:
                    # float says the node might be prunable; prove it exactly.
                    # Missing a prune candidate here is safe, it only branches.
                    if compiled.integral_objective:
                        thr = float(best_val - 1)
                        margin = 0.25
                    else:
                        # bound lifting can raise the exact bound by up to
                        # one grid step, so look that much further down
                        thr = float(best_val)
                        margin = grid_step + max(1e-9, 1e-6 * abs(thr))
                    wants_cert = fval + float(compiled.value_offset) >= thr - margin
                frac_j = -1
                for j in range(compiled.n_bin):
                    v = fx[j]
                    d = v if v < 0.5 else 1.0 - v
                    if d > _FRAC_TOL:
                        frac_j = j
                        break
                if not wants_cert and frac_j >= 0:
                    branch_var = frac_j  # clearly worth exploring, no proof needed
                else:
                    lo, up = compiled.node_bounds(fixes)
                    cert = exactlp.certify_basis(
                        compiled.rows,
                        compiled.rhs,
                        compiled.cost,
                        lo,
                        up,
                        compiled.eq,
                        basis,
                        flip,
                        row_sign,
                        phase=2,
                        want_rc=not fixes,
                        cols=compiled.cols,
                    )
                    if cert is None:
                        fallbacks += 1
                        need_exact = True
                    elif not fixes:
                        value, xs, rc = cert
                        bound = value + compiled.value_offset
                        try_rounding(xs)
                        if best_val is not None:
                            # a bound-side column whose exact move cost
                            # already crosses the prune line stays put in
                            # the entire tree
                            held = tuple(
                                (j, int(xs[j]))
                                for j in range(compiled.n_bin)
                                if rc[j] and prune_ok(bound + rc[j])
                            )
                            fixes = held
                        branch_var = settle_exact(bound, xs)
                    else:
                        value, xs = cert
                        branch_var = settle_exact(value + compiled.value_offset, xs)
            elif st == _kernel.INFEASIBLE:
                lo, up = compiled.node_bounds(fixes)
                cert = exactlp.certify_basis(
                    compiled.rows,
                    compiled.rhs,
                    compiled.cost,
                    lo,
                    up,
                    compiled.eq,
                    basis,
                    flip,
                    row_sign,
                    phase=1,
                    cols=compiled.cols,
                )
                if cert is not None and cert[0] > 0:
                    continue  # infeasibility proven
                fallbacks += 1
                need_exact = True
            else:
                fallbacks += 1
                need_exact = True

        if need_exact:
            lo, up = compiled.node_bounds(fixes)
            st, value, xs = exactlp.exact_solve_bounded(
                compiled.rows, compiled.rhs, compiled.cost, lo, up, compiled.eq
            )
            if st == exactlp.INFEASIBLE:
                continue
            if st != exactlp.OPTIMAL:
                raise SolverError(
                    f"relaxation of {sip.instance.name} reported status {st}"
                )
            if not fixes:
                try_rounding(xs)
            branch_var = settle_exact(value + compiled.value_offset, xs)

        if branch_var >= 0:
            stack.append(fixes + ((branch_var, 1),))
            stack.append(fixes + ((branch_var, 0),))

    if timed_out:
        return SolveOutcome(Status.TIMED_OUT, best_x, best_val, nodes, fallbacks)
    if best_x is None:
        return SolveOutcome(Status.INFEASIBLE, None, None, nodes, fallbacks)
    return SolveOutcome(Status.OPTIMAL, best_x, best_val, nodes, fallbacks)


def solve_lexicographic(
    instance: BoipInstance,
    first: int,
    second: int,
    budget: Optional[SolverBudget] = None,
    lp_mode: str = "certified",
) -> SolveOutcome:
    """Minimize objective ``first``, then ``second`` among its optima.

    Performs two solves; the returned outcome carries the stage-two
    solution and the stage-two objective value.
    """
    obj1 = instance.objectives[first]
    out1 = solve(
        SingleObjectiveIP(instance, LinearObjective(obj1.coeffs, obj1.offset)),
        budget,
        lp_mode,
    )
    if out1.status is not Status.OPTIMAL:
        return out1
    obj2 = instance.objectives[second]
    out2 = solve(
        SingleObjectiveIP(
            instance,
            LinearObjective(obj2.coeffs, obj2.offset),
            z_bounds=(ZBound(first, Rel.EQ, out1.value),),
            hint=out1.x,
        ),
        budget,
        lp_mode,
    )
    return out2


def enumerate_all(instance: BoipInstance) -> Iterator[tuple[tuple[int, ...], Point]]:
    """Yield every feasible 0-1 vector with its image. Guarded to n <= 20."""
    if instance.n > 20:
        raise ValueError("exhaustive enumeration is limited to n <= 20")
    for x in itertools.product((0, 1), repeat=instance.n):
        if is_feasible(instance, x):
            yield x, evaluate_objectives(instance, x)
