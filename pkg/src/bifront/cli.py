"""Command-line front door: generate instances, run solvers, score subsets.

Subcommands: gen writes a seeded random instance as JSON; solve runs one
algorithm on one instance to completion; approx does the same under an
iteration or wall-clock budget; oracle brute-forces the frontier of a
small instance; metrics scores a subset CSV against a reference CSV;
bench drives a seeded (instance x algorithm) grid and writes a summary
table.

Every artifact is deterministic for fixed seeds. Wall-clock data is
segregated into *.timing.json / timing.csv files so everything else can
be compared byte for byte across machines and reruns.

Exit codes: 0 success, 2 precondition violation, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .baselines import BaConfig, WeightPolicy, WsConfig, run_ba, run_ws
from .boxer import VARIANTS, BoxerConfig, RunResult, run
from .generate import make_assignment, make_diagonal, make_generic, make_knapsack
from .io import (
    FormatError,
    dump_instance,
    format_fixed,
    instance_to_dict,
    load_instance,
    read_frontier_csv,
    write_frontier_csv,
    write_json,
    write_jsonl,
)
from .ipsolve import SolverError
from .metrics import representation_report, report_dict
from .model import BoipInstance, Sense
from .oracle import brute_force_frontier

WS_TAGS = {
    "WS-FW": WeightPolicy.FW,
    "WS-CW": WeightPolicy.CW,
    "WS-NW": WeightPolicy.NW,
}
ALGO_TAGS = tuple(VARIANTS) + tuple(WS_TAGS) + ("BA",)


class CliError(Exception):
    """Precondition or solver failure with its process exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _eps_arg(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("eps must lie strictly between 0 and 1")
    return v


def _parse_seeds(text: str) -> list[int]:
    """Comma list of integers; a:b spans the inclusive range."""
    seeds: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            lo, hi = part.split(":", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        else:
            seeds.append(int(part))
    if not seeds:
        raise CliError(2, f"no seeds in {text!r}")
    return seeds


def _parse_senses(text: str) -> tuple[Sense, Sense]:
    parts = [p.strip().lower() for p in text.split(",")]
    if len(parts) != 2 or any(p not in ("min", "max") for p in parts):
        raise CliError(2, f"--sense must be two of min/max, got {text!r}")
    return Sense(parts[0]), Sense(parts[1])


def _generated(kind: str, size: int, seed: int, rows=None) -> BoipInstance:
    if kind == "knapsack":
        return make_knapsack(size, seed)
    if kind == "assignment":
        return make_assignment(size, seed)
    if kind == "generic":
        return make_generic(size, seed, m=rows)
    return make_diagonal(size)


def _run_tag(
    instance: BoipInstance,
    tag: str,
    args,
    budget_rbd=None,
    budget_seconds=None,
) -> RunResult:
    """Dispatch one algorithm tag with the shared run flags applied."""
    eps = args.eps
    elimination = not args.no_elimination
    if tag in VARIANTS:
        try:
            cfg = BoxerConfig.from_variant(
                tag,
                second_stage=args.second_stage,
                box_order=args.box_order,
                eps=eps,
                elimination=elimination,
                per_model_seconds=args.tl_seconds,
                per_model_nodes=args.tl_nodes,
                rbd_budget=budget_rbd,
                wall_budget=budget_seconds,
            )
        except ValueError as exc:
            raise CliError(2, str(exc)) from exc
        return run(instance, cfg)
    if args.second_stage != "p1p2" or args.box_order != "fifo":
        raise CliError(2, f"--second-stage/--box-order do not apply to {tag}")
    if args.tl_seconds is not None or args.tl_nodes is not None:
        raise CliError(2, f"per-model limits do not apply to {tag}")
    if tag in WS_TAGS:
        cfg = WsConfig(
            policy=WS_TAGS[tag],
            eps=eps,
            elimination=elimination,
            rbd_budget=budget_rbd,
            wall_budget=budget_seconds,
        )
        return run_ws(instance, cfg)
    if tag == "BA":
        if args.no_elimination:
            raise CliError(2, "--no-elimination does not apply to BA")
        if eps != Fraction(1, 2):
            raise CliError(2, "--eps does not apply to BA")
        return run_ba(
            instance, BaConfig(rbd_budget=budget_rbd, wall_budget=budget_seconds)
        )
    raise CliError(2, f"unknown algorithm {tag!r} (choose from {', '.join(ALGO_TAGS)})")


def _write_cell(outdir: Path, instance: BoipInstance, tag: str, result: RunResult):
    """Frontier CSV, stats JSON, and iteration log for one run; timing apart."""
    outdir.mkdir(parents=True, exist_ok=True)
    stem = outdir / f"{instance.name}.{tag}"
    write_frontier_csv(
        result.frontier, f"{stem}.frontier.csv", instance.original_sense
    )
    stats = {"instance": instance.name, "algorithm": tag}
    stats.update(result.stats.public_dict())
    write_json(stats, f"{stem}.stats.json")
    write_jsonl(result.log, f"{stem}.log.jsonl")
    timing = {
        "wall_seconds": result.stats.wall_seconds,
        "models": [[name, dt] for name, dt in result.timings],
    }
    write_json(timing, f"{stem}.timing.json")
    return stem


def cmd_gen(args) -> int:
    instance = _generated(args.kind, args.size, args.seed, rows=args.rows)
    if args.out:
        dump_instance(instance, args.out)
        print(f"wrote {args.out}")
    else:
        json.dump(instance_to_dict(instance), sys.stdout, indent=2, sort_keys=True)
        print()
    return 0


def _cmd_run(args, budget_rbd, budget_seconds) -> int:
    instance = load_instance(args.instance)
    result = _run_tag(
        instance, args.variant, args, budget_rbd=budget_rbd, budget_seconds=budget_seconds
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = _write_cell(outdir, instance, args.variant, result)
    s = result.stats
    print(
        f"{instance.name} {args.variant}: N={s.n_nondominated} ip={s.ip_count} "
        f"rbd={s.rbd_count} completed={s.completed} -> {stem}.*"
    )
    return 0


def cmd_solve(args) -> int:
    return _cmd_run(args, None, None)


def cmd_approx(args) -> int:
    if args.budget_rbd is None and args.budget_seconds is None:
        raise CliError(2, "approx needs --budget-rbd or --budget-seconds")
    return _cmd_run(args, args.budget_rbd, args.budget_seconds)


def cmd_oracle(args) -> int:
    instance = load_instance(args.instance)
    frontier = brute_force_frontier(instance)
    if args.out:
        write_frontier_csv(frontier, args.out, instance.original_sense)
        print(f"wrote {args.out} ({len(frontier)} points)")
    else:
        write_frontier_csv(frontier, "/dev/stdout", instance.original_sense)
    return 0


def cmd_metrics(args) -> int:
    senses = _parse_senses(args.sense)
    reference = read_frontier_csv(args.reference, senses)
    subset = read_frontier_csv(args.subset, senses)
    known = {(p.z1, p.z2) for p in reference}
    for p in subset:
        if (p.z1, p.z2) not in known:
            shown = tuple(
                -v if s is Sense.MAX else v for v, s in zip((p.z1, p.z2), senses)
            )
            raise CliError(
                2,
                f"subset point {shown} is not part of the reference frontier",
            )
    payload = report_dict(representation_report(reference, subset))
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def cmd_bench(args) -> int:
    algorithms = [t.strip() for t in args.algorithms.split(",") if t.strip()]
    for tag in algorithms + [args.reference_algorithm]:
        if tag not in ALGO_TAGS:
            raise CliError(2, f"unknown algorithm {tag!r}")
    seeds = _parse_seeds(args.seeds)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    summary_rows = []
    timing_rows = []
    for seed in seeds:
        instance = _generated(args.kind, args.size, seed, rows=args.rows)
        cell_dir = outdir / instance.name
        ref = _run_tag(instance, args.reference_algorithm, args)
        if not ref.stats.completed:
            raise CliError(3, f"reference run truncated on {instance.name}")
        _write_cell(cell_dir, instance, f"ref-{args.reference_algorithm}", ref)

        budget = args.budget_rbd
        if args.budget_fraction is not None:
            budget = math.ceil(args.budget_fraction * ref.stats.rbd_count)
        for tag in algorithms:
            res = _run_tag(
                instance, tag, args,
                budget_rbd=budget, budget_seconds=args.budget_seconds,
            )
            _write_cell(cell_dir, instance, tag, res)
            rep = representation_report(
                ref.frontier, res.frontier, ideal=ref.ideal, nadir=ref.nadir
            )
            s = res.stats
            summary_rows.append(
                [
                    instance.name,
                    tag,
                    s.n_nondominated,
                    s.ip_count,
                    s.rbd_count,
                    s.c_count,
                    s.c2_count,
                    s.e_count,
                    int(s.completed),
                    rep.ce,
                    format_fixed(rep.sce),
                    format_fixed(rep.shg * 1000),
                ]
            )
            timing_rows.append([instance.name, tag, f"{s.wall_seconds:.3f}"])
            print(
                f"{instance.name} {tag}: N={s.n_nondominated} rbd={s.rbd_count} "
                f"ce={rep.ce} sce={format_fixed(rep.sce)}"
            )

    import csv as _csv

    with open(outdir / "summary.csv", "w", newline="") as fh:
        w = _csv.writer(fh, lineterminator="\n")
        w.writerow(
            ["instance", "algorithm", "N", "ip", "rbd", "C", "C2", "E",
             "completed", "ce", "sce", "shg_x1000"]
        )
        w.writerows(summary_rows)
    with open(outdir / "timing.csv", "w", newline="") as fh:
        w = _csv.writer(fh, lineterminator="\n")
        w.writerow(["instance", "algorithm", "seconds"])
        w.writerows(timing_rows)
    print(f"summary: {outdir / 'summary.csv'}")
    return 0


def _add_algo_flags(p: argparse.ArgumentParser):
    p.add_argument(
        "--second-stage", choices=("p1p2", "smodel"), default="p1p2",
        help="how a touching probe is turned into frontier points",
    )
    p.add_argument(
        "--box-order", choices=("fifo", "largest"), default="fifo",
        help="box queue discipline",
    )
    p.add_argument(
        "--eps", type=_eps_arg, default=Fraction(1, 2),
        help="strict-inequality tightening, rational in (0,1)",
    )
    p.add_argument(
        "--no-elimination", action="store_true",
        help="keep undersized boxes in the queue",
    )
    p.add_argument("--tl-seconds", type=float, default=None,
                   help="per-model wall limit for probe solves")
    p.add_argument("--tl-nodes", type=int, default=None,
                   help="per-model node limit for probe solves")


def _add_gen_args(p: argparse.ArgumentParser, with_seed_list: bool):
    p.add_argument("--kind", required=True,
                   choices=("knapsack", "assignment", "generic", "diagonal"))
    p.add_argument("--size", type=int, required=True,
                   help="items / matrix side / columns / exponent by kind")
    p.add_argument("--rows", type=int, default=None,
                   help="constraint rows for the generic kind")
    if with_seed_list:
        p.add_argument("--seeds", required=True,
                       help="comma list, a:b for inclusive ranges")
    else:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifront",
        description="exact biobjective 0-1 frontier enumeration and scoring",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded instance as JSON")
    _add_gen_args(p, with_seed_list=False)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="enumerate the frontier of one instance")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--variant", required=True,
                   help=f"one of {', '.join(ALGO_TAGS)}")
    _add_algo_flags(p)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("approx", help="budget-limited run of one instance")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--variant", required=True,
                   help=f"one of {', '.join(ALGO_TAGS)}")
    _add_algo_flags(p)
    p.add_argument("--budget-rbd", type=int, default=None,
                   help="stop after this many probe models")
    p.add_argument("--budget-seconds", type=float, default=None,
                   help="stop after this much wall time")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("oracle", help="brute-force frontier of a small instance")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--out", default=None, help="frontier CSV (default stdout)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("metrics", help="score a subset against a reference CSV")
    p.add_argument("subset", help="subset frontier CSV")
    p.add_argument("--reference", required=True, help="reference frontier CSV")
    p.add_argument("--sense", default="min,min",
                   help="axis senses of both CSVs, e.g. max,max")
    p.add_argument("--out", default=None, help="report JSON (default stdout)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="seeded experiment grid with summary table")
    _add_gen_args(p, with_seed_list=True)
    p.add_argument("--algorithms", required=True,
                   help="comma list of algorithm tags")
    p.add_argument("--reference-algorithm", default="FN",
                   help="unbudgeted run used as scoring reference")
    _add_algo_flags(p)
    p.add_argument("--budget-rbd", type=int, default=None,
                   help="absolute probe budget for every listed algorithm")
    p.add_argument("--budget-fraction", type=float, default=None,
                   help="probe budget as a fraction of the reference run")
    p.add_argument("--budget-seconds", type=float, default=None,
                   help="wall budget for every listed algorithm")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
