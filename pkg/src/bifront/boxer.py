"""Frontier enumeration by goal-direction box exploration.

Starting from the two lexicographic corner solutions, the driver keeps a
queue of boxes that may still contain unknown nondominated points. Each
iteration probes one box along a direction (min alpha with z <= s +
alpha*d and the eps-tightened box bounds), derives one or two frontier
points from the probe optimum, and splits the box into at most two
children. Undersized children are discarded by a size test; every
discard is counted in the elimination counter E.

Exactness notes. The probe optimum x yields n = z(x) and the goal point
y = s + alpha*d. y and n agree in at least one component exactly, and
n <= y holds componentwise; both facts are recorded per iteration so a
verification pass can assert them. All corner arithmetic is rational.
Rational coordinates only ever appear on s corners (and the matching
free corner coordinate), never on the eps-tightened bounds p1 and t2,
which stay integral.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from . import ipsolve
from .io import rational_str
from .ipsolve import SingleObjectiveIP, SolverBudget, Status
from .model import (
    BoipInstance,
    Box,
    Frontier,
    Point,
    Rel,
    evaluate_objectives,
    initial_box,
)
from .scalarize import (
    DEFAULT_EPS,
    build_ps,
    build_s_model,
    build_stage2,
    _check_eps,
)


class DirectionPolicy(str, Enum):
    FIXED = "fixed"
    CHANGING = "changing"
    NADIR = "nadir"


class SplitRule(str, Enum):
    USE_N = "use_n"
    USE_Y = "use_y"


class SecondStage(str, Enum):
    P1P2 = "p1p2"
    SMODEL = "smodel"


class BoxOrder(str, Enum):
    FIFO = "fifo"
    LARGEST_FIRST = "largest"


#: shorthand tags for the direction/split combinations
VARIANTS = {
    "FN": (DirectionPolicy.FIXED, SplitRule.USE_N),
    "FY": (DirectionPolicy.FIXED, SplitRule.USE_Y),
    "CN": (DirectionPolicy.CHANGING, SplitRule.USE_N),
    "CY": (DirectionPolicy.CHANGING, SplitRule.USE_Y),
    "NN": (DirectionPolicy.NADIR, SplitRule.USE_N),
    "NY": (DirectionPolicy.NADIR, SplitRule.USE_Y),
}


@dataclass(frozen=True)
class BoxerConfig:
    direction: DirectionPolicy = DirectionPolicy.CHANGING
    split: SplitRule = SplitRule.USE_N
    second_stage: SecondStage = SecondStage.P1P2
    box_order: BoxOrder = BoxOrder.FIFO
    eps: Fraction = DEFAULT_EPS
    elimination: bool = True
    lp_mode: str = "certified"
    per_model_seconds: Optional[float] = None
    per_model_nodes: Optional[int] = None
    rbd_budget: Optional[int] = None
    wall_budget: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "direction", DirectionPolicy(self.direction))
        object.__setattr__(self, "split", SplitRule(self.split))
        object.__setattr__(self, "second_stage", SecondStage(self.second_stage))
        object.__setattr__(self, "box_order", BoxOrder(self.box_order))
        object.__setattr__(self, "eps", _check_eps(self.eps))
        if self.second_stage is SecondStage.SMODEL and self.split is not SplitRule.USE_N:
            raise ValueError("the single-model second stage requires the use_n split")

    @classmethod
    def from_variant(cls, tag: str, **kw) -> "BoxerConfig":
        if tag not in VARIANTS:
            raise ValueError(f"unknown variant {tag!r}")
        direction, split = VARIANTS[tag]
        return cls(direction=direction, split=split, **kw)


@dataclass
class RunStats:
    n_nondominated: int = 0
    ip_count: int = 0
    rbd_count: int = 0
    c_count: int = 0
    c2_count: int = 0
    e_count: int = 0
    completed: bool = True
    tl_retries: int = 0
    nodes_total: int = 0
    lp_fallbacks: int = 0
    wall_seconds: float = 0.0

    def public_dict(self) -> dict:
        """Deterministic fields for serialized stats (timing excluded)."""
        return {
            "N": self.n_nondominated,
            "ip_count": self.ip_count,
            "rbd_count": self.rbd_count,
            "C": self.c_count,
            "C2": self.c2_count,
            "E": self.e_count,
            "completed": self.completed,
            "tl_retries": self.tl_retries,
        }


@dataclass
class RunResult:
    frontier: Frontier
    stats: RunStats
    log: list = field(default_factory=list)
    t0: Optional[Point] = None
    p0: Optional[Point] = None
    ideal: Optional[Point] = None
    nadir: Optional[Point] = None
    timings: list = field(default_factory=list)


def choose_direction(
    policy: DirectionPolicy,
    box: Box,
    nadir: Optional[Point] = None,
    clamp: bool = False,
) -> tuple[Fraction, Fraction]:
    """Probe direction for a box under the given policy.

    fixed: (1,1). changing: the box extents. nadir: from s toward the
    global corner estimate (requires ``nadir``). Nonpositive components
    are a configuration error on boxes that passed the size test; with
    ``clamp`` they are lifted to 1 instead, which is only used when the
    size test is disabled (probe feasibility does not depend on d).
    """
    if policy is DirectionPolicy.FIXED:
        return (Fraction(1), Fraction(1))
    if policy is DirectionPolicy.CHANGING:
        d = (box.width, box.height)
    else:
        if nadir is None:
            raise ValueError("nadir direction needs the global corner point")
        d = (Fraction(nadir.z1) - box.s[0], Fraction(nadir.z2) - box.s[1])
    if clamp:
        d = (d[0] if d[0] > 0 else Fraction(1), d[1] if d[1] > 0 else Fraction(1))
    if d[0] <= 0 or d[1] <= 0:
        raise ValueError(f"nonpositive probe direction {d} for {box}")
    return d


def should_keep(box: Box, split: SplitRule) -> bool:
    """Size test: can this box still contain an unknown frontier point?

    With integer corner points (use_n) both extents must exceed 1; with
    goal-point corners (use_y) extents of exactly 1 must be kept.
    """
    if split is SplitRule.USE_N:
        return box.width > 1 and box.height > 1
    return box.width >= 1 and box.height >= 1


def split_box(
    box: Box,
    n1: tuple[Fraction, Fraction],
    n2: tuple[Fraction, Fraction],
) -> tuple[Box, Box]:
    """Children left of n1 and right of n2 (both may be empty boxes)."""
    left = Box(s=(n1[0], box.p[1]), p=box.p, t=n1)
    right = Box(s=(box.t[0], n2[1]), p=n2, t=box.t)
    return left, right


def verify_ip_identity(stats: RunStats, second_stage: SecondStage = SecondStage.P1P2) -> bool:
    """Exact model-count bookkeeping for a completed run.

    With the two-model second stage the identity is
    ip = 3N + C - 3*C2 - E - 1; the single-model stage never pays the
    equality-case models, giving ip = 3N - E - 1. Both apply to completed
    runs that found at least two points; smaller runs are vacuously true.
    """
    if not stats.completed or stats.n_nondominated < 2:
        return True
    if second_stage is SecondStage.SMODEL:
        return stats.ip_count == 3 * stats.n_nondominated - stats.e_count - 1
    return stats.ip_count == (
        3 * stats.n_nondominated
        + stats.c_count
        - 3 * stats.c2_count
        - stats.e_count
        - 1
    )


class _Session:
    """Counts and times every single-objective model solved in a run."""

    def __init__(self, lp_mode: str):
        self.lp_mode = lp_mode
        self.ip_count = 0
        self.nodes = 0
        self.fallbacks = 0
        self.timings: list[tuple[str, float]] = []

    def solve(self, sip: SingleObjectiveIP, tag: str, budget=None):
        t0 = time.perf_counter()
        out = ipsolve.solve(sip, budget, self.lp_mode)
        self.timings.append((tag, time.perf_counter() - t0))
        self.ip_count += 1
        self.nodes += out.nodes
        self.fallbacks += out.exact_fallbacks
        return out

    def lexmin(self, instance: BoipInstance, first: int, tag: str):
        o1 = instance.objectives[first]
        out1 = self.solve(
            SingleObjectiveIP(instance, ipsolve.LinearObjective(o1.coeffs, o1.offset)),
            f"{tag}/stage1",
        )
        if out1.status is not Status.OPTIMAL:
            return out1
        o2 = instance.objectives[1 - first]
        return self.solve(
            SingleObjectiveIP(
                instance,
                ipsolve.LinearObjective(o2.coeffs, o2.offset),
                z_bounds=(ipsolve.ZBound(first, Rel.EQ, out1.value),),
            ),
            f"{tag}/stage2",
        )


def _corner_pair(v) -> list[str]:
    return [rational_str(v[0]), rational_str(v[1])]


def _as_point(v: tuple[Fraction, Fraction]) -> Point:
    if v[0].denominator != 1 or v[1].denominator != 1:
        raise ipsolve.SolverError(f"expected an integral image point, got {v}")
    return Point(int(v[0]), int(v[1]))


def run(
    instance: BoipInstance,
    config: BoxerConfig = BoxerConfig(),
    observer: Optional[Callable] = None,
) -> RunResult:
    """Enumerate (or truncate to a budget) the nondominated frontier.

    The returned frontier contains only certified nondominated points,
    also under budget truncation. ``observer``, when given, is called
    after every probe with (record, queue_boxes, frontier) and is meant
    for tests that check queue invariants.
    """
    started = time.perf_counter()
    session = _Session(config.lp_mode)
    stats = RunStats()
    log: list[dict] = []

    out_t = session.lexmin(instance, 0, "init/t0")
    if out_t.status is not Status.OPTIMAL:
        stats.ip_count = session.ip_count
        stats.completed = out_t.status is Status.INFEASIBLE
        stats.wall_seconds = time.perf_counter() - started
        return RunResult(Frontier(), stats, log)
    t0 = evaluate_objectives(instance, out_t.x)
    out_p = session.lexmin(instance, 1, "init/p0")
    if out_p.status is not Status.OPTIMAL:
        raise ipsolve.SolverError("second corner solve failed on a feasible instance")
    p0 = evaluate_objectives(instance, out_p.x)

    frontier = Frontier((t0, p0))
    ideal = Point(t0.z1, p0.z2)
    nadir = Point(p0.z1, t0.z2)

    queue: list[tuple[int, Box]] = []
    seq = 0

    def enqueue(box: Box):
        nonlocal seq
        if config.elimination and not should_keep(box, config.split):
            stats.e_count += 1
            return 0
        queue.append((seq, box))
        seq += 1
        return 1

    enqueue(initial_box(t0, p0))

    per_model = None
    if config.per_model_seconds is not None or config.per_model_nodes is not None:
        per_model = SolverBudget(config.per_model_seconds, config.per_model_nodes)

    truncated = False
    iteration = 0
    while queue:
        if config.rbd_budget is not None and stats.rbd_count >= config.rbd_budget:
            truncated = True
            break
        if (
            config.wall_budget is not None
            and time.perf_counter() - started > config.wall_budget
        ):
            truncated = True
            break

        if config.box_order is BoxOrder.FIFO:
            pos = 0
        else:
            pos = max(range(len(queue)), key=lambda k: (queue[k][1].area, -queue[k][0]))
        _, box = queue.pop(pos)
        iteration += 1

        d = choose_direction(
            config.direction, box, nadir, clamp=not config.elimination
        )
        probe = build_ps(instance, box, d, config.eps)
        out = session.solve(probe, f"rbd/{iteration}", per_model)
        stats.rbd_count += 1
        tl_retried = False
        if out.status is Status.TIMED_OUT:
            stats.tl_retries += 1
            tl_retried = True
            if d[1] > 1:
                d = (d[0], d[1] - 1)
                probe = build_ps(instance, box, d, config.eps)
            out = session.solve(probe, f"rbd/{iteration}/retry", None)
            stats.rbd_count += 1

        record = {
            "iter": iteration,
            "box_s": _corner_pair(box.s),
            "box_p": _corner_pair(box.p),
            "box_t": _corner_pair(box.t),
            "d": _corner_pair(d),
            "status": out.status.value,
            "tl_retried": tl_retried,
        }
        log.append(record)

        if out.status is not Status.OPTIMAL:
            record.update(
                {"alpha": None, "added": [], "queue_len": len(queue),
                 "frontier_size": len(frontier)}
            )
            if observer is not None:
                observer(record, [b for _, b in queue], frontier)
            continue

        alpha = out.value
        xb = out.x
        nb = evaluate_objectives(instance, xb)
        y = (box.s[0] + alpha * d[0], box.s[1] + alpha * d[1])
        nbf = (Fraction(nb.z1), Fraction(nb.z2))
        touch1 = nbf[0] == y[0]
        touch2 = nbf[1] == y[1]
        inside = nbf[0] <= y[0] and nbf[1] <= y[1]
        c_case = touch1 and touch2
        if c_case:
            stats.c_count += 1

        def _second(sip: SingleObjectiveIP, tag: str) -> tuple[Fraction, Fraction]:
            stage = session.solve(sip, tag)
            if stage.status is not Status.OPTIMAL:
                raise ipsolve.SolverError(
                    f"second-stage model unexpectedly {stage.status.value}"
                )
            q = evaluate_objectives(instance, stage.x)
            return (Fraction(q.z1), Fraction(q.z2))

        if config.second_stage is SecondStage.SMODEL:
            n1 = n2 = _second(build_s_model(instance, xb), f"smodel/{iteration}")
        else:
            if touch1:
                n1 = _second(build_stage2(instance, 0, xb), f"p1/{iteration}")
            else:
                n1 = y if config.split is SplitRule.USE_Y else nbf
            if touch2:
                n2 = _second(build_stage2(instance, 1, xb), f"p2/{iteration}")
            else:
                n2 = y if config.split is SplitRule.USE_Y else nbf

        g1 = n1[1] < nbf[1]
        g2 = n2[0] < nbf[0]
        added = []
        if g1:
            pt = _as_point(n1)
            if frontier.add(pt):
                added.append(pt)
        if g2:
            pt = _as_point(n2)
            if frontier.add(pt):
                added.append(pt)
        if not g1 and not g2:
            if frontier.add(nb):
                added.append(nb)
        if c_case and g1 and g2 and n1 != n2:
            stats.c2_count += 1

        record.update(
            {
                "alpha": rational_str(alpha),
                "y": _corner_pair(y),
                "nb": [nb.z1, nb.z2],
                "touch_z1": touch1,
                "touch_z2": touch2,
                "inside": inside,
                "n1": _corner_pair(n1),
                "n2": _corner_pair(n2),
                "c_case": c_case,
                "added": [[p.z1, p.z2] for p in added],
            }
        )

        left, right = split_box(box, n1, n2)
        kept = enqueue(left) + enqueue(right)

        record.update(
            {
                "children_kept": kept,
                "queue_len": len(queue),
                "frontier_size": len(frontier),
            }
        )
        if observer is not None:
            observer(record, [b for _, b in queue], frontier)

    stats.completed = not truncated
    stats.n_nondominated = len(frontier)
    stats.ip_count = session.ip_count
    stats.nodes_total = session.nodes
    stats.lp_fallbacks = session.fallbacks
    stats.wall_seconds = time.perf_counter() - started
    return RunResult(
        frontier,
        stats,
        log,
        t0=t0,
        p0=p0,
        ideal=ideal,
        nadir=nadir,
        timings=session.timings,
    )
