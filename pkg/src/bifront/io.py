"""Readers and writers for instances, frontiers, stats and logs.

Instance files carry objectives in their declared sense; loading negates
"max" objectives so the rest of the package only sees minimization, and
writing undoes that. All writers are deterministic: fixed key order,
fixed number rendering, newline-terminated output.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .model import (
    BoipInstance,
    Constraint,
    Frontier,
    Kind,
    Objective,
    Point,
    Rel,
    Sense,
)


class FormatError(ValueError):
    """Raised for malformed instance or frontier files."""


def rational_str(x) -> str:
    """Exact text form of a rational, e.g. '3/7' or '5'."""
    return str(Fraction(x))


def format_fixed(x, places: int = 4) -> str:
    """Render a rational with a fixed number of decimals, rounded exactly.

    Rounding is done on the exact value (round-half-even), not on a float,
    so equal inputs always produce identical text.
    """
    q = Fraction(x)
    scaled = round(q * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _negate_objective(obj: Objective) -> Objective:
    return Objective(tuple(-c for c in obj.coeffs), -obj.offset)


def load_instance(path: str | Path) -> BoipInstance:
    """Read an instance JSON file into minimization form."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return instance_from_dict(raw, name_hint=Path(path).stem)


def instance_from_dict(raw: dict, name_hint: str = "instance") -> BoipInstance:
    if not isinstance(raw, dict):
        raise FormatError("instance file must contain a JSON object")
    for key in ("n", "objectives", "constraints"):
        if key not in raw:
            raise FormatError(f"instance is missing required key {key!r}")
    try:
        senses = tuple(Sense(s) for s in raw.get("sense", ["min", "min"]))
        if len(senses) != 2:
            raise FormatError("sense must list exactly two entries")
        objectives = []
        for spec, sense in zip(raw["objectives"], senses):
            obj = Objective(tuple(spec["coeffs"]), int(spec.get("offset", 0)))
            objectives.append(_negate_objective(obj) if sense is Sense.MAX else obj)
        if len(raw["objectives"]) != 2:
            raise FormatError("exactly two objectives are required")
        constraints = tuple(
            Constraint(tuple(c["coeffs"]), Rel(c["rel"]), int(c["rhs"]))
            for c in raw["constraints"]
        )
        return BoipInstance(
            name=str(raw.get("name", name_hint)),
            kind=Kind(raw.get("kind", "generic")),
            n=int(raw["n"]),
            objectives=tuple(objectives),
            constraints=constraints,
            original_sense=senses,
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed instance: {exc}") from exc


def instance_to_dict(instance: BoipInstance) -> dict:
    objectives = []
    for obj, sense in zip(instance.objectives, instance.original_sense):
        shown = _negate_objective(obj) if sense is Sense.MAX else obj
        objectives.append({"coeffs": list(shown.coeffs), "offset": shown.offset})
    return {
        "name": instance.name,
        "kind": instance.kind.value,
        "n": instance.n,
        "sense": [s.value for s in instance.original_sense],
        "objectives": objectives,
        "constraints": [
            {"coeffs": list(c.coeffs), "rel": c.rel.value, "rhs": c.rhs}
            for c in instance.constraints
        ],
    }


def dump_instance(instance: BoipInstance, path: str | Path) -> None:
    write_json(instance_to_dict(instance), path)


def write_json(obj, path: str | Path) -> None:
    """Deterministic JSON dump: sorted keys, two-space indent, final newline."""
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _to_original_sense(p: Point, senses: Sequence[Sense]) -> tuple[int, int]:
    vals = []
    for v, sense in zip(p, senses):
        vals.append(-v if sense is Sense.MAX else v)
    return tuple(vals)


def write_frontier_csv(
    frontier: Frontier | Iterable[Point],
    path: str | Path,
    original_sense: Sequence[Sense] = (Sense.MIN, Sense.MIN),
) -> None:
    """Write image points as CSV with header z1,z2 in the declared sense.

    Rows follow the internal order (minimization z1 ascending) so output
    is byte-identical across runs.
    """
    senses = [Sense(s) for s in original_sense]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["z1", "z2"])
        for p in frontier:
            writer.writerow(_to_original_sense(p, senses))


def read_frontier_csv(
    path: str | Path,
    original_sense: Sequence[Sense] = (Sense.MIN, Sense.MIN),
) -> Frontier:
    """Read a frontier CSV back into minimization space.

    Raises FormatError if the rows are not mutually nondominated.
    """
    senses = [Sense(s) for s in original_sense]
    points = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["z1", "z2"]:
            raise FormatError(f"{path}: expected header z1,z2")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                vals = [int(row[0]), int(row[1])]
            except (IndexError, ValueError) as exc:
                raise FormatError(f"{path}:{lineno}: bad row {row!r}") from exc
            z = [
                -v if sense is Sense.MAX else v for v, sense in zip(vals, senses)
            ]
            points.append(Point(*z))
    frontier = Frontier()
    for p in points:
        if not frontier.add(p):
            raise FormatError(f"{path}: points are not mutually nondominated")
    if len(frontier) != len(points):
        raise FormatError(f"{path}: points are not mutually nondominated")
    return frontier


def write_jsonl(records: Iterable[dict], path: str | Path) -> None:
    """One JSON object per line, sorted keys."""
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
