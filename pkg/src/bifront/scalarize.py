"""Single-objective models probed during frontier exploration.

Every builder returns a SingleObjectiveIP over the shared instance. Box
bounds enter as z_i <= bound - eps with eps in (0,1); because objective
values and the bounded corners are integral, that is realized exactly as
z_i <= bound - 1 for every admissible eps, so the solved models do not
depend on the particular eps chosen.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .ipsolve import (
    LinearObjective,
    MinAlphaObjective,
    SingleObjectiveIP,
    ZBound,
)
from .model import BoipInstance, Box, Rel, evaluate_objectives

DEFAULT_EPS = Fraction(1, 2)


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    return eps


def _box_bounds(box: Box) -> tuple[ZBound, ZBound]:
    return (
        ZBound(0, Rel.LE, box.p[0] - 1),
        ZBound(1, Rel.LE, box.t[1] - 1),
    )


def build_ps(
    instance: BoipInstance,
    box: Box,
    direction: tuple[Fraction, Fraction],
    eps=DEFAULT_EPS,
) -> SingleObjectiveIP:
    """Goal-direction probe of a box: min alpha with z <= s + alpha*d.

    The box interior is enforced through the two eps-tightened bounds;
    direction components must be strictly positive.
    """
    _check_eps(eps)
    return SingleObjectiveIP(
        instance,
        MinAlphaObjective(box.s, direction),
        z_bounds=_box_bounds(box),
    )


def build_stage2(
    instance: BoipInstance, fixed: int, x_ref: Sequence[int]
) -> SingleObjectiveIP:
    """Minimize the other objective while pinning z_fixed at z_fixed(x_ref).

    x_ref satisfies the pin by construction, so it doubles as the
    warm-start incumbent.
    """
    z = evaluate_objectives(instance, x_ref)
    other = instance.objectives[1 - fixed]
    return SingleObjectiveIP(
        instance,
        LinearObjective(other.coeffs, other.offset),
        z_bounds=(ZBound(fixed, Rel.EQ, Fraction(z[fixed])),),
        hint=tuple(x_ref),
    )


def build_s_model(instance: BoipInstance, x_ref: Sequence[int]) -> SingleObjectiveIP:
    """Minimize z1 + z2 inside the region dominated by z(x_ref)."""
    z = evaluate_objectives(instance, x_ref)
    o1, o2 = instance.objectives
    coeffs = tuple(a + b for a, b in zip(o1.coeffs, o2.coeffs))
    return SingleObjectiveIP(
        instance,
        LinearObjective(coeffs, o1.offset + o2.offset),
        z_bounds=(
            ZBound(0, Rel.LE, Fraction(z[0])),
            ZBound(1, Rel.LE, Fraction(z[1])),
        ),
        hint=tuple(x_ref),
    )


def build_ws(
    instance: BoipInstance, box: Box, weight, eps=DEFAULT_EPS
) -> SingleObjectiveIP:
    """Weighted-sum probe of a box: min w*z1 + (1-w)*z2 inside the box.

    The weight must be strictly between 0 and 1 so optima are
    nondominated within the box. The objective is scaled by the weight
    denominator to stay integral; only the argmin is meaningful.
    """
    _check_eps(eps)
    w = Fraction(weight)
    if not 0 < w < 1:
        raise ValueError("weight must lie strictly between 0 and 1")
    o1, o2 = instance.objectives
    a = w.numerator
    b = w.denominator - w.numerator
    coeffs = tuple(a * c1 + b * c2 for c1, c2 in zip(o1.coeffs, o2.coeffs))
    return SingleObjectiveIP(
        instance,
        LinearObjective(coeffs, a * o1.offset + b * o2.offset),
        z_bounds=_box_bounds(box),
    )


def build_eps_constraint(
    instance: BoipInstance,
    minimize: int,
    z1_max: Optional[Fraction] = None,
    z2_max: Optional[Fraction] = None,
) -> SingleObjectiveIP:
    """Minimize one objective under optional upper bounds on either image
    component."""
    if minimize not in (0, 1):
        raise ValueError("minimize must be 0 or 1")
    obj = instance.objectives[minimize]
    bounds = []
    if z1_max is not None:
        bounds.append(ZBound(0, Rel.LE, Fraction(z1_max)))
    if z2_max is not None:
        bounds.append(ZBound(1, Rel.LE, Fraction(z2_max)))
    return SingleObjectiveIP(
        instance,
        LinearObjective(obj.coeffs, obj.offset),
        z_bounds=tuple(bounds),
    )
