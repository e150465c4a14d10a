"""Single-objective subproblem descriptions and their LP compilation.

A subproblem is the base biobjective instance plus one objective (either
a plain integer linear form or a min-alpha goal over a reference point
and direction) and extra constraints stated over the objective values or
over the raw variables. Compilation produces an all-integer row system
suitable for both the float kernel and the exact layer: rational bounds
are cleared by their denominators, >= rows are negated into <= rows, and
equality rows are kept whole but flagged so the solvers pin their slack
at zero (splitting them into inequality pairs would double the row count
and make every basis degenerate).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, lcm
from typing import Optional, Union

import numpy as np

from ..model import BoipInstance, Constraint, Rel

# data magnitudes beyond this make scaled float64 rows unreliable, so the
# solver routes such models straight to the exact simplex
_FLOAT_SAFE_LIMIT = 2**48


@dataclass(frozen=True)
class LinearObjective:
    """Minimize coeffs.x + offset (all integers)."""

    coeffs: tuple[int, ...]
    offset: int = 0


@dataclass(frozen=True)
class MinAlphaObjective:
    """Minimize alpha with z(x) <= reference + alpha * direction.

    Both direction components must be strictly positive; the optimum
    alpha equals max_i (z_i(x) - reference_i) / direction_i.
    """

    reference: tuple[Fraction, Fraction]
    direction: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(
            self, "reference", tuple(Fraction(v) for v in self.reference)
        )
        object.__setattr__(
            self, "direction", tuple(Fraction(v) for v in self.direction)
        )
        if any(d <= 0 for d in self.direction):
            raise ValueError("direction components must be strictly positive")


@dataclass(frozen=True)
class ZBound:
    """Constraint z_component(x) REL value, with an exact rational value."""

    component: int
    rel: Rel
    value: Fraction

    def __post_init__(self):
        if self.component not in (0, 1):
            raise ValueError("component must be 0 or 1")
        object.__setattr__(self, "rel", Rel(self.rel))
        object.__setattr__(self, "value", Fraction(self.value))


ObjectiveSpec = Union[LinearObjective, MinAlphaObjective]


@dataclass(frozen=True)
class SingleObjectiveIP:
    """One objective over the instance, plus bounds on the image values.

    hint, when given, is a 0-1 vector the caller believes feasible for
    this subproblem; the solver verifies it exactly and, if it holds,
    starts from it as the incumbent.
    """

    instance: BoipInstance
    objective: ObjectiveSpec
    z_bounds: tuple[ZBound, ...] = ()
    extra_rows: tuple[Constraint, ...] = ()
    hint: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "z_bounds", tuple(self.z_bounds))
        object.__setattr__(self, "extra_rows", tuple(self.extra_rows))
        if self.hint is not None:
            object.__setattr__(self, "hint", tuple(int(v) for v in self.hint))


class CompiledIp:
    """Integer row system with cached float64 views for the kernel."""

    __slots__ = (
        "sip",
        "n_bin",
        "has_alpha",
        "ncols",
        "rows",
        "cols",
        "rhs",
        "eq",
        "cost",
        "value_offset",
        "integral_objective",
        "float_ok",
        "a_np",
        "b_np",
        "eq_np",
        "cost_np",
        "max_iters",
    )

    def __init__(self, sip: SingleObjectiveIP):
        self.sip = sip
        instance = sip.instance
        obj = sip.objective
        self.n_bin = instance.n
        self.has_alpha = isinstance(obj, MinAlphaObjective)
        self.ncols = self.n_bin + (1 if self.has_alpha else 0)

        rows: list[list[int]] = []
        rhs: list[int] = []
        eqs: list[int] = []

        def add_le(coeffs, bound, is_eq=0):
            rows.append(list(coeffs) + [0] * (self.ncols - len(coeffs)))
            rhs.append(int(bound))
            eqs.append(is_eq)

        def add_row(coeffs, rel, bound):
            if rel is Rel.LE:
                add_le(coeffs, bound)
            elif rel is Rel.GE:
                add_le([-c for c in coeffs], -bound)
            else:
                add_le(coeffs, bound, 1)

        for row in instance.constraints:
            add_row(row.coeffs, row.rel, row.rhs)
        for row in sip.extra_rows:
            add_row(row.coeffs, row.rel, row.rhs)
        for zb in sip.z_bounds:
            o = instance.objectives[zb.component]
            level = zb.value - o.offset
            den = level.denominator
            add_row([den * c for c in o.coeffs], zb.rel, level.numerator)

        if self.has_alpha:
            # z_i(x) <= s_i + alpha*d_i with alpha = a + alpha_lb, a >= 0
            alpha_lb = None
            for o, s_i, d_i in zip(instance.objectives, obj.reference, obj.direction):
                zmin = sum(min(c, 0) for c in o.coeffs) + o.offset
                cand = (zmin - s_i) / d_i
                if alpha_lb is None or cand > alpha_lb:
                    alpha_lb = cand
            for o, s_i, d_i in zip(instance.objectives, obj.reference, obj.direction):
                level = s_i - o.offset + d_i * alpha_lb
                scale = lcm(d_i.denominator, level.denominator)
                row = [scale * c for c in o.coeffs]
                row.append(int(-scale * d_i))
                rows.append(row)
                rhs.append(int(scale * level))
                eqs.append(0)
            self.cost = [0] * self.n_bin + [1]
            self.value_offset = alpha_lb
            self.integral_objective = False
        else:
            self.cost = list(obj.coeffs)
            self.value_offset = Fraction(obj.offset)
            self.integral_objective = True

        self.rows = rows
        self.cols = [[row[j] for row in rows] for j in range(self.ncols)]
        self.rhs = rhs
        self.eq = eqs

        hi = 0
        for row in rows:
            for c in row:
                hi = max(hi, abs(c))
        for v in rhs:
            hi = max(hi, abs(v))
        for c in self.cost:
            hi = max(hi, abs(c))
        self.float_ok = hi < _FLOAT_SAFE_LIMIT

        m = len(rows)
        self.a_np = np.zeros((m, self.ncols), dtype=np.float64)
        for i, row in enumerate(rows):
            self.a_np[i, :] = row
        self.b_np = np.asarray(rhs, dtype=np.float64)
        self.eq_np = np.asarray(eqs, dtype=np.float64)
        self.cost_np = np.asarray(self.cost, dtype=np.float64)
        self.max_iters = 400 + 40 * (m + self.ncols)

    def node_bounds(self, fixes):
        """lo/up lists for the exact layer under the given 0-1 fixings."""
        lo = [0] * self.ncols
        up: list = [1] * self.n_bin
        if self.has_alpha:
            up.append(None)
        for j, v in fixes:
            lo[j] = v
            up[j] = v
        return lo, up

    def node_bounds_np(self, fixes):
        lo = np.zeros(self.ncols, dtype=np.float64)
        up = np.ones(self.ncols, dtype=np.float64)
        if self.has_alpha:
            up[self.n_bin] = inf
        for j, v in fixes:
            lo[j] = v
            up[j] = v
        return lo, up


def compile_ip(sip: SingleObjectiveIP) -> CompiledIp:
    return CompiledIp(sip)
