"""Representativeness measures for partial frontiers.

All four measures are exact: coverage error and hypervolume are integers
on integer frontiers, the two scaled forms are fractions. Decimal
rendering happens only in report_dict, never inside the computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .io import format_fixed
from .model import Frontier, Point


def _as_staircase(points: Iterable[Point], what: str) -> list[Point]:
    """Sorted copy of a mutually nondominated point set.

    Raises ValueError when two points tie in a component or one
    dominates another, since every metric here assumes a clean frontier.
    """
    pts = [Point(int(a), int(b)) for a, b in points]
    pts.sort()
    for a, b in zip(pts, pts[1:]):
        if a.z1 == b.z1 or a.z2 <= b.z2:
            raise ValueError(f"{what} contains dominated or duplicate points: {a}, {b}")
    return pts


def coverage_error(reference: Iterable[Point], subset: Iterable[Point]) -> int:
    """Worst Chebyshev distance from a reference point to the subset."""
    ref = _as_staircase(reference, "reference")
    sub = _as_staircase(subset, "subset")
    if not sub:
        raise ValueError("coverage error is undefined for an empty subset")
    known = set(ref)
    for q in sub:
        if q not in known:
            raise ValueError(f"subset point {q} is not in the reference frontier")
    return max(
        min(max(abs(n.z1 - q.z1), abs(n.z2 - q.z2)) for q in sub) for n in ref
    )


def scaled_coverage_error(
    reference: Iterable[Point],
    subset: Iterable[Point],
    ideal: Point,
    nadir: Point,
) -> Fraction:
    """Coverage error divided by the larger ideal-to-nadir range."""
    scale = max(nadir.z1 - ideal.z1, nadir.z2 - ideal.z2)
    if scale <= 0:
        raise ValueError("scaled coverage error needs a nonzero objective range")
    return Fraction(coverage_error(reference, subset), scale)


def hypervolume(points: Iterable[Point], nadir: Point) -> int:
    """Exact area dominated by the set within the corner anchored at nadir.

    Computed as a single staircase sweep over the points sorted by z1;
    each point contributes the rectangle between its z2 level and the
    previous (higher) level, clipped at the nadir.
    """
    pts = _as_staircase(points, "point set")
    area = 0
    prev_z2 = nadir.z2
    for q in pts:
        if q.z1 > nadir.z1 or q.z2 > nadir.z2:
            raise ValueError(f"point {q} exceeds the nadir {nadir}")
        area += (nadir.z1 - q.z1) * (prev_z2 - q.z2)
        prev_z2 = q.z2
    return area


def scaled_hypervolume_gap(
    reference: Iterable[Point],
    subset: Iterable[Point],
    nadir: Point,
) -> Fraction:
    """Relative dominated-area loss of the subset, in [0, 1]."""
    ref = _as_staircase(reference, "reference")
    sub = _as_staircase(subset, "subset")
    known = set(ref)
    for q in sub:
        if q not in known:
            raise ValueError(f"subset point {q} is not in the reference frontier")
    h_ref = hypervolume(ref, nadir)
    if h_ref == 0:
        raise ValueError("reference frontier has zero hypervolume")
    return Fraction(h_ref - hypervolume(sub, nadir), h_ref)


@dataclass(frozen=True)
class RepresentationReport:
    subset_size: int
    ce: int
    sce: Fraction
    hv_ref: int
    hv_subset: int
    shg: Fraction


def representation_report(
    reference: Frontier | Iterable[Point],
    subset: Frontier | Iterable[Point],
    ideal: Point | None = None,
    nadir: Point | None = None,
) -> RepresentationReport:
    """All four measures of a subset against its reference frontier.

    Ideal and nadir default to the componentwise extremes of the
    reference, which is the usual choice when the reference is the full
    nondominated set.
    """
    ref = _as_staircase(reference, "reference")
    sub = _as_staircase(subset, "subset")
    if not ref:
        raise ValueError("reference frontier must be nonempty")
    if ideal is None:
        ideal = Point(min(p.z1 for p in ref), min(p.z2 for p in ref))
    if nadir is None:
        nadir = Point(max(p.z1 for p in ref), max(p.z2 for p in ref))
    return RepresentationReport(
        subset_size=len(sub),
        ce=coverage_error(ref, sub),
        sce=scaled_coverage_error(ref, sub, ideal, nadir),
        hv_ref=hypervolume(ref, nadir),
        hv_subset=hypervolume(sub, nadir),
        shg=scaled_hypervolume_gap(ref, sub, nadir),
    )


def report_dict(report: RepresentationReport) -> dict:
    """JSON-ready rendering; scaled measures fixed to 4 decimal places."""
    return {
        "n_subset": report.subset_size,
        "ce": report.ce,
        "sce": format_fixed(report.sce, 4),
        "hv_ref": report.hv_ref,
        "hv_subset": report.hv_subset,
        "shg": format_fixed(report.shg, 4),
    }
