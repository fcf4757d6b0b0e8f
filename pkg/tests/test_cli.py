import csv
import subprocess
import sys

import pytest

from pacbasis import canonical_basis, format_implications, read_context
from pacbasis.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_process(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "pacbasis.cli", *argv], capture_output=True, cwd=cwd)


def test_canonical_basis_prints_13_lines(capsys, sa):
    code, out, _ = run(capsys, "canonical-basis", "star-alliance.cxt")
    assert code == 0
    assert len(out.splitlines()) == 13
    assert out == format_implications(canonical_basis(sa))


def test_canonical_basis_of_file(capsys, tmp_path, one_object):
    from pacbasis import write_context
    path = tmp_path / "one.csv"
    path.write_bytes(write_context(one_object, "csv"))
    code, out, _ = run(capsys, "canonical-basis", str(path))
    assert (code, out) == (0, "{} -> a, b\n")


def test_pac_basis_is_byte_identical():
    argv = ("pac-basis", "star-alliance", "--epsilon", "0.1", "--delta", "0.1", "--seed", "7")
    first, second = run_process(*argv), run_process(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout and first.stdout
    assert first.stderr == b""


def test_pac_basis_stats_and_sampler(capsys):
    code, out, err = run(capsys, "pac-basis", "star-alliance", "--epsilon", "0.2", "--delta", "0.2",
                         "--seed", "1", "--stats", "--sampler", "biased:" + ",".join(["0.5"] * 9))
    assert code == 0 and out
    assert err.startswith("seed=1 epsilon=0.2 delta=0.2 ")
    keys = [field.split("=")[0] for field in err.split()]
    assert keys == ["seed", "epsilon", "delta", "i_final", "membership_queries", "samples_drawn", "basis_size"]


def test_eval_of_canonical_basis(capsys, tmp_path, sa):
    path = tmp_path / "can.txt"
    path.write_text(format_implications(canonical_basis(sa)), encoding="utf-8")
    code, out, _ = run(capsys, "eval", "star-alliance", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["horn_distance=0", "precision=1", "recall=1"]
    code, out, _ = run(capsys, "eval", "star-alliance", str(path), "--sampled", "1000", "--seed", "2")
    assert code == 0 and "horn_distance=0" in out and "mode=sampled(n=1000, seed=2)" in out


def test_gen_writes_corpus_and_manifest(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--attributes", "6", "--count", "3", "--min-basis-size", "2",
                     "--seed", "4", "--objects", "5-30", "--out-dir", str(tmp_path))
    assert code == 0
    with open(tmp_path / "manifest.csv", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["index"] for r in rows] == ["0", "1", "2"]
    for r in rows:
        ctx = read_context(tmp_path / f"ctx{int(r['index']):04d}.cxt")
        assert len(ctx.universe) == 6 and 5 <= len(ctx) <= 30
        assert int(r["objects"]) == len(ctx)
        assert int(r["canonical_size"]) == len(canonical_basis(ctx)) >= 2


def test_experiment_outputs_are_byte_identical(tmp_path):
    (tmp_path / "sweep.spec").write_text("epsilons=0.1,0.5\ndeltas=0.1\nrepetitions=2\nseed=3\n"
                                         "attributes=6\nobjects=5-40\ncount=3\n")
    (tmp_path / "stab.spec").write_text("context=star-alliance\nepsilons=0.1\ndelta=0.1\nruns=3\nseed=3\n")
    for kind, spec in (("sweep", "sweep.spec"), ("stability", "stab.spec")):
        outputs = []
        for k in range(2):
            out = tmp_path / f"{kind}{k}.csv"
            proc = run_process("experiment", kind, "--spec", spec, "--out", out.name, cwd=tmp_path)
            assert proc.returncode == 0, proc.stderr
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
        assert outputs[0].startswith(b"context_id,epsilon,delta,repetition,seed,")


def test_case_study(capsys):
    code, out, _ = run(capsys, "case-study")
    assert code == 0
    assert "canonical basis (13 implications)" in out
    assert "refuted by Lufthansa" in out
    assert "(exact 57/512)" in out


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["pac-basis", "star-alliance", "--delta", "0.1"],
    ["pac-basis", "star-alliance", "--epsilon", "x", "--delta", "0.1"],
    ["pac-basis", "star-alliance", "--epsilon", "2", "--delta", "0.1"],
    ["pac-basis", "star-alliance", "--epsilon", "0.1", "--delta", "0.1", "--sampler", "gaussian"],
    ["canonical-basis", "star-alliance", "--unknown"],
    ["gen", "--count", "1", "--out-dir", "x", "--objects", "a-b"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_data_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.cxt"
    bad.write_text("B\n\n1\n2\n\ng\na\nb\nX\n")
    assert run(capsys, "canonical-basis", str(bad))[0] == 2
    assert run(capsys, "canonical-basis", str(tmp_path / "missing.cxt"))[0] == 2
    imp = tmp_path / "imp.txt"
    imp.write_text("Nowhere -> Europe\n")
    assert run(capsys, "eval", "star-alliance", str(imp))[0] == 2
    assert run(capsys, "eval", "star-alliance", str(tmp_path / "none.txt"))[0] == 2
    (tmp_path / "empty").mkdir()
    spec = tmp_path / "s.spec"
    spec.write_text("epsilons=0.1\ndeltas=0.1\ncorpus_dir=empty\n")
    code, _, err = run(capsys, "experiment", "sweep", "--spec", str(spec))
    assert code == 2 and "empty" in err
    assert run(capsys, "experiment", "sweep", "--spec", str(tmp_path / "nope.spec"))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(["pacbasis", "canonical-basis", "star-alliance"], capture_output=True)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 13
