"""Two comparison frontier algorithms built on the same box bookkeeping.

run_ws probes each box with a single weighted-sum model whose weight is
strictly interior, so every optimum is a new nondominated point of the
open gap; the box then splits on that point exactly like the use_n rule.

run_ba keeps adjacent nondominated pairs instead of boxes. A probe picks
the midpoint level mu on z2 and lexicographically minimizes (z1, z2)
subject to z2 <= mu and z1 <= r1 - 1. A feasible probe yields a new point
between the pair; an infeasible probe proves the lower part of the strip
empty, so the search level is raised and the pair retried until either a
point appears or the strip runs out (which eliminates the pair). The
strip bookkeeping guarantees points lying above the first midpoint are
still found; elimination on infeasibility alone would miss them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from . import ipsolve
from .boxer import (
    RunResult,
    RunStats,
    SplitRule,
    _Session,
    _corner_pair,
    should_keep,
    split_box,
)
from .io import rational_str
from .ipsolve import SingleObjectiveIP, Status
from .model import (
    BoipInstance,
    Box,
    Frontier,
    Point,
    Rel,
    evaluate_objectives,
    initial_box,
)
from .scalarize import DEFAULT_EPS, _check_eps, build_eps_constraint, build_ws


class WeightPolicy(str, Enum):
    FW = "FW"
    CW = "CW"
    NW = "NW"


@dataclass(frozen=True)
class WsConfig:
    policy: WeightPolicy = WeightPolicy.FW
    eps: Fraction = DEFAULT_EPS
    elimination: bool = True
    lp_mode: str = "certified"
    rbd_budget: Optional[int] = None
    wall_budget: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "policy", WeightPolicy(self.policy))
        object.__setattr__(self, "eps", _check_eps(self.eps))


@dataclass(frozen=True)
class BaConfig:
    lp_mode: str = "certified"
    rbd_budget: Optional[int] = None
    wall_budget: Optional[float] = None


def choose_weight(
    policy: WeightPolicy,
    box: Box,
    t0: Optional[Point] = None,
    p0: Optional[Point] = None,
    clamp: bool = False,
) -> Fraction:
    """Interior weight on z1 for a box probe.

    FW: 1/2. CW: height/(width+height) of the box. NW: the same ratio
    taken toward the global corner points. ``clamp`` lifts nonpositive
    extents to 1 for CW, needed only when elimination is disabled.
    """
    if policy is WeightPolicy.FW:
        return Fraction(1, 2)
    if policy is WeightPolicy.CW:
        w, h = box.width, box.height
        if clamp:
            w = w if w > 0 else Fraction(1)
            h = h if h > 0 else Fraction(1)
        if w <= 0 or h <= 0:
            raise ValueError(f"nonpositive box extents ({w}, {h}) for CW weight")
        return h / (w + h)
    if t0 is None or p0 is None:
        raise ValueError("NW weight needs the global corner points")
    w = Fraction(p0.z1) - box.s[0]
    h = Fraction(t0.z2) - box.s[1]
    if clamp:
        w = w if w > 0 else Fraction(1)
        h = h if h > 0 else Fraction(1)
    if w <= 0 or h <= 0:
        raise ValueError(f"box corner {box.s} outside the global ranges")
    return h / (w + h)


def verify_ws_ip_identity(stats: RunStats) -> bool:
    """Model-count bookkeeping for a completed weighted-sum run.

    One model per probe and two child boxes per found point give
    ip = 5 + 2(N-2) - E; vacuous on truncated runs or N < 2.
    """
    if not stats.completed or stats.n_nondominated < 2:
        return True
    return stats.ip_count == 5 + 2 * (stats.n_nondominated - 2) - stats.e_count


def run_ws(
    instance: BoipInstance,
    config: WsConfig = WsConfig(),
    observer: Optional[Callable] = None,
) -> RunResult:
    """Enumerate the frontier with weighted-sum box probes."""
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

    queue: list[Box] = []

    def enqueue(box: Box) -> int:
        if config.elimination and not should_keep(box, SplitRule.USE_N):
            stats.e_count += 1
            return 0
        queue.append(box)
        return 1

    enqueue(initial_box(t0, p0))

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

        box = queue.pop(0)
        iteration += 1
        weight = choose_weight(
            config.policy, box, t0, p0, clamp=not config.elimination
        )
        out = session.solve(
            build_ws(instance, box, weight, config.eps), f"ws/{iteration}"
        )
        stats.rbd_count += 1

        record = {
            "iter": iteration,
            "box_s": _corner_pair(box.s),
            "box_p": _corner_pair(box.p),
            "box_t": _corner_pair(box.t),
            "w": rational_str(weight),
            "status": out.status.value,
        }
        log.append(record)

        if out.status is not Status.OPTIMAL:
            record.update(
                {"added": [], "queue_len": len(queue), "frontier_size": len(frontier)}
            )
            if observer is not None:
                observer(record, list(queue), frontier)
            continue

        q = evaluate_objectives(instance, out.x)
        if not frontier.add(q):
            raise ipsolve.SolverError(
                f"weighted-sum probe returned a known or dominated point {q}"
            )
        qf = (Fraction(q.z1), Fraction(q.z2))
        left, right = split_box(box, qf, qf)
        kept = enqueue(left) + enqueue(right)

        record.update(
            {
                "added": [[q.z1, q.z2]],
                "children_kept": kept,
                "queue_len": len(queue),
                "frontier_size": len(frontier),
            }
        )
        if observer is not None:
            observer(record, list(queue), frontier)

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


def run_ba(
    instance: BoipInstance,
    config: BaConfig = BaConfig(),
    observer: Optional[Callable] = None,
) -> RunResult:
    """Enumerate the frontier with midpoint-level lexicographic probes.

    Pairs are kept FIFO as (left point, right point, level floor); the
    level floor starts at the right point's z2 and rises past every level
    proved empty, so each pair performs a bisection over its z2 strip.
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

    queue: list[tuple[Point, Point, int]] = []

    def enqueue(lpt: Point, rpt: Point) -> int:
        if rpt.z1 - lpt.z1 <= 1 or lpt.z2 - rpt.z2 <= 1:
            stats.e_count += 1
            return 0
        queue.append((lpt, rpt, rpt.z2))
        return 1

    enqueue(t0, p0)

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

        lpt, rpt, lo = queue.pop(0)
        iteration += 1
        mu = (lpt.z2 + lo) // 2
        out1 = session.solve(
            build_eps_constraint(instance, 0, z1_max=rpt.z1 - 1, z2_max=mu),
            f"ba/{iteration}/stage1",
        )
        stats.rbd_count += 1

        record = {
            "iter": iteration,
            "pair_l": [lpt.z1, lpt.z2],
            "pair_r": [rpt.z1, rpt.z2],
            "level": mu,
            "status": out1.status.value,
        }
        log.append(record)

        if out1.status is not Status.OPTIMAL:
            if mu + 1 >= lpt.z2:
                stats.e_count += 1
            else:
                queue.insert(0, (lpt, rpt, mu + 1))
            record.update(
                {"added": [], "queue_len": len(queue), "frontier_size": len(frontier)}
            )
            if observer is not None:
                observer(record, list(queue), frontier)
            continue

        out2 = session.solve(
            SingleObjectiveIP(
                instance,
                ipsolve.LinearObjective(
                    instance.objectives[1].coeffs, instance.objectives[1].offset
                ),
                z_bounds=(
                    ipsolve.ZBound(0, Rel.EQ, out1.value),
                    ipsolve.ZBound(1, Rel.LE, Fraction(mu)),
                ),
                hint=out1.x,
            ),
            f"ba/{iteration}/stage2",
        )
        if out2.status is not Status.OPTIMAL:
            raise ipsolve.SolverError(
                f"level-probe second stage unexpectedly {out2.status.value}"
            )
        q = evaluate_objectives(instance, out2.x)
        if not frontier.add(q):
            raise ipsolve.SolverError(
                f"level probe returned a known or dominated point {q}"
            )
        kept = enqueue(lpt, q) + enqueue(q, rpt)

        record.update(
            {
                "added": [[q.z1, q.z2]],
                "children_kept": kept,
                "queue_len": len(queue),
                "frontier_size": len(frontier),
            }
        )
        if observer is not None:
            observer(record, list(queue), frontier)

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
