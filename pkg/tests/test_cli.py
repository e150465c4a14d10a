"""Command-line behavior: artifacts, exit codes, and reproducibility."""

import json

import pytest

from bifront.cli import CliError, _parse_seeds, main
from bifront.ipsolve import SolverError


def _gen(tmp_path, name="inst.json", kind="knapsack", size=10, seed=7):
    path = tmp_path / name
    rc = main(["gen", "--kind", kind, "--size", str(size), "--seed", str(seed),
               "--out", str(path)])
    assert rc == 0
    return path


def test_parse_seeds():
    assert _parse_seeds("5") == [5]
    assert _parse_seeds("1,2, 5") == [1, 2, 5]
    assert _parse_seeds("3:5") == [3, 4, 5]
    assert _parse_seeds("1,4:6,9") == [1, 4, 5, 6, 9]
    with pytest.raises(CliError):
        _parse_seeds(" , ")


def test_gen_writes_stable_instance(tmp_path):
    a = _gen(tmp_path, "a.json")
    b = _gen(tmp_path, "b.json")
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["kind"] == "knapsack"
    assert data["sense"] == ["max", "max"]


def test_gen_to_stdout(capsys):
    rc = main(["gen", "--kind", "generic", "--size", "6", "--seed", "1"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 6


def test_solve_artifacts_match_oracle(tmp_path):
    inst = _gen(tmp_path)
    outdir = tmp_path / "run"
    rc = main(["solve", str(inst), "--variant", "CN", "--out", str(outdir)])
    assert rc == 0
    stem = outdir / "kp-n10-s7.CN"
    front = (stem.parent / (stem.name + ".frontier.csv")).read_bytes()
    oracle_csv = tmp_path / "oracle.csv"
    assert main(["oracle", str(inst), "--out", str(oracle_csv)]) == 0
    assert front == oracle_csv.read_bytes()
    stats = json.loads((stem.parent / (stem.name + ".stats.json")).read_text())
    assert stats["completed"] is True
    assert stats["algorithm"] == "CN"
    assert stats["N"] == front.decode().count("\n") - 1
    assert (stem.parent / (stem.name + ".log.jsonl")).exists()
    assert (stem.parent / (stem.name + ".timing.json")).exists()


@pytest.mark.parametrize("tag", ["FY", "WS-CW", "BA"])
def test_other_algorithms_agree_with_oracle(tmp_path, tag):
    inst = _gen(tmp_path)
    outdir = tmp_path / tag
    assert main(["solve", str(inst), "--variant", tag, "--out", str(outdir)]) == 0
    oracle_csv = tmp_path / "oracle.csv"
    assert main(["oracle", str(inst), "--out", str(oracle_csv)]) == 0
    got = (outdir / f"kp-n10-s7.{tag}.frontier.csv").read_bytes()
    assert got == oracle_csv.read_bytes()


def test_solve_reruns_are_byte_identical(tmp_path):
    inst = _gen(tmp_path)
    for d in ("one", "two"):
        assert main(
            ["solve", str(inst), "--variant", "NY", "--out", str(tmp_path / d)]
        ) == 0
    for suffix in ("frontier.csv", "stats.json", "log.jsonl"):
        a = (tmp_path / "one" / f"kp-n10-s7.NY.{suffix}").read_bytes()
        b = (tmp_path / "two" / f"kp-n10-s7.NY.{suffix}").read_bytes()
        assert a == b, suffix


def test_approx_requires_budget(tmp_path, capsys):
    inst = _gen(tmp_path)
    rc = main(["approx", str(inst), "--variant", "CN", "--out", str(tmp_path)])
    assert rc == 2
    assert "budget" in capsys.readouterr().err


def test_approx_budget_zero_gives_corners(tmp_path):
    inst = _gen(tmp_path)
    outdir = tmp_path / "approx"
    rc = main(["approx", str(inst), "--variant", "CN", "--budget-rbd", "0",
               "--out", str(outdir)])
    assert rc == 0
    front = (outdir / "kp-n10-s7.CN.frontier.csv").read_text()
    assert len(front.strip().splitlines()) == 3  # header plus both corners
    stats = json.loads((outdir / "kp-n10-s7.CN.stats.json").read_text())
    assert stats["completed"] is False
    assert stats["rbd_count"] == 0


def test_oracle_to_stdout(tmp_path, capfd):
    inst = _gen(tmp_path, kind="generic", size=8, seed=11)
    rc = main(["oracle", str(inst)])
    assert rc == 0
    out = capfd.readouterr().out
    assert out.startswith("z1,z2\n")


def test_metrics_roundtrip(tmp_path, capsys):
    inst = _gen(tmp_path)
    ref = tmp_path / "ref.csv"
    assert main(["oracle", str(inst), "--out", str(ref)]) == 0
    lines = ref.read_text().strip().splitlines()
    subset = tmp_path / "sub.csv"
    subset.write_text("\n".join([lines[0], lines[1], lines[-1]]) + "\n")
    capsys.readouterr()
    rc = main(["metrics", str(subset), "--reference", str(ref),
               "--sense", "max,max"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n_subset"] == 2
    assert report["ce"] > 0
    rc = main(["metrics", str(ref), "--reference", str(ref),
               "--sense", "max,max"])
    report = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert report["ce"] == 0 and report["shg"] == "0.0000"


def test_metrics_rejects_foreign_point(tmp_path, capsys):
    inst = _gen(tmp_path)
    ref = tmp_path / "ref.csv"
    assert main(["oracle", str(inst), "--out", str(ref)]) == 0
    bogus = tmp_path / "bogus.csv"
    bogus.write_text("z1,z2\n1,1\n")
    rc = main(["metrics", str(bogus), "--reference", str(ref),
               "--sense", "max,max"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "(1, 1)" in err  # reported in the user's max coordinates


def test_metrics_rejects_bad_sense(tmp_path, capsys):
    inst = _gen(tmp_path)
    ref = tmp_path / "ref.csv"
    assert main(["oracle", str(inst), "--out", str(ref)]) == 0
    rc = main(["metrics", str(ref), "--reference", str(ref), "--sense", "up,down"])
    assert rc == 2


def test_flag_validation_exit_codes(tmp_path, capsys):
    inst = _gen(tmp_path)
    checks = [
        ["solve", str(inst), "--variant", "XX", "--out", str(tmp_path / "x")],
        ["solve", str(inst), "--variant", "WS-FW", "--box-order", "largest",
         "--out", str(tmp_path / "x")],
        ["solve", str(inst), "--variant", "BA", "--eps", "1/3",
         "--out", str(tmp_path / "x")],
        ["solve", str(inst), "--variant", "BA", "--no-elimination",
         "--out", str(tmp_path / "x")],
        ["solve", str(inst), "--variant", "FY", "--second-stage", "smodel",
         "--out", str(tmp_path / "x")],
        ["solve", str(inst), "--variant", "WS-NW", "--tl-nodes", "5",
         "--out", str(tmp_path / "x")],
    ]
    for argv in checks:
        assert main(argv) == 2, argv
        assert capsys.readouterr().err.startswith("error:")


def test_missing_and_garbage_instance_files(tmp_path, capsys):
    rc = main(["solve", str(tmp_path / "nope.json"), "--variant", "CN",
               "--out", str(tmp_path)])
    assert rc == 2
    garbage = tmp_path / "bad.json"
    garbage.write_text("{\"name\": \"x\"")
    rc = main(["solve", str(garbage), "--variant", "CN", "--out", str(tmp_path)])
    assert rc == 2
    capsys.readouterr()


def test_solver_failures_exit_three(tmp_path, capsys, monkeypatch):
    inst = _gen(tmp_path)
    import bifront.cli as cli

    def boom(*a, **k):
        raise SolverError("engine gave up")

    monkeypatch.setattr(cli, "run", boom)
    rc = main(["solve", str(inst), "--variant", "CN", "--out", str(tmp_path)])
    assert rc == 3
    assert "engine gave up" in capsys.readouterr().err


def test_diagonal_eliminations_through_cli(tmp_path):
    inst = _gen(tmp_path, name="diag.json", kind="diagonal", size=3, seed=0)
    outdir = tmp_path / "ba"
    assert main(["solve", str(inst), "--variant", "BA", "--out", str(outdir)]) == 0
    stats = json.loads((outdir / "diag-a3.BA.stats.json").read_text())
    assert stats["N"] == 9
    assert stats["E"] == stats["N"] - 1


def test_bench_grid(tmp_path):
    out1 = tmp_path / "grid1"
    argv = ["bench", "--kind", "knapsack", "--size", "10", "--seeds", "7,15",
            "--algorithms", "CN,WS-FW,BA", "--reference-algorithm", "FN",
            "--budget-fraction", "0.5", "--out", str(out1)]
    assert main(argv) == 0
    summary = (out1 / "summary.csv").read_text().strip().splitlines()
    assert summary[0] == "instance,algorithm,N,ip,rbd,C,C2,E,completed,ce,sce,shg_x1000"
    assert len(summary) == 1 + 2 * 3
    assert (out1 / "timing.csv").exists()
    assert (out1 / "kp-n10-s7" / "kp-n10-s7.ref-FN.frontier.csv").exists()
    assert (out1 / "kp-n10-s7" / "kp-n10-s7.CN.stats.json").exists()
    # identical rerun: the summary table must not depend on wall time
    out2 = tmp_path / "grid2"
    argv[-1] = str(out2)
    assert main(argv) == 0
    assert (out1 / "summary.csv").read_bytes() == (out2 / "summary.csv").read_bytes()


def test_bench_rejects_unknown_algorithm(tmp_path, capsys):
    rc = main(["bench", "--kind", "knapsack", "--size", "8", "--seeds", "1",
               "--algorithms", "CN,nope", "--out", str(tmp_path / "g")])
    assert rc == 2
    assert "unknown algorithm" in capsys.readouterr().err
