import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from detpart import cli
from detpart.core import Partition
from detpart.hgr import read_partition, write_hgr

from generators import large_instance


@pytest.fixture
def hgr_file(tmp_path):
    path = tmp_path / "g.hgr"
    with open(path, "w") as fh:
        write_hgr(large_instance(4, 600), fh)
    return path


def _run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_partition_writes_default_output(capsys, hgr_file):
    code, out, _ = _run(capsys, "partition", "--input", hgr_file, "--k", 4, "--threads", 2)
    assert code == 0
    fields = dict(tok.split("=") for tok in out.split())
    assert set(fields) == {"cut", "maxpart", "balanced", "levels", "time_ms"}
    assert fields["balanced"] == "yes"
    p = read_partition(f"{hgr_file}.part.4", 600, 4)
    assert int(p.part_weight.max()) == int(fields["maxpart"])


def test_partition_then_evaluate(capsys, hgr_file, tmp_path):
    out_path = tmp_path / "p.txt"
    code, out, _ = _run(capsys, "partition", "--input", hgr_file, "--output", out_path, "--policy", "rand")
    assert code == 0
    cut_value = out.split()[0]
    code, out, _ = _run(capsys, "evaluate", "--input", hgr_file, "--partition", out_path)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == cut_value
    assert lines[-1] == "balanced=yes"
    assert lines[3].startswith("bound=330 ")


def test_evaluate_rejects_bad_partition(capsys, hgr_file, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0\n" * 10)
    code, _, err = _run(capsys, "evaluate", "--input", hgr_file, "--partition", bad)
    assert code == 1
    assert "line" in err


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "broken.hgr"
    path.write_text("2 3\n1 2\n1 9\n")
    code, _, err = _run(capsys, "partition", "--input", path)
    assert code == 1
    assert "line 3" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = _run(capsys, "partition", "--input", tmp_path / "nope.hgr")
    assert code == 1


def test_too_many_parts(capsys, tmp_path):
    path = tmp_path / "tiny.hgr"
    path.write_text("1 3\n1 2 3\n")
    code, _, err = _run(capsys, "partition", "--input", path, "--k", 4)
    assert code == 2
    assert "more parts than nodes" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["partition"],
        ["partition", "--input", "x", "--k", "0"],
        ["partition", "--input", "x", "--policy", "XYZ"],
        ["partition", "--input", "x", "--epsilon", "-1"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == 2


def test_check_determinism_passes(capsys, hgr_file):
    code, out, _ = _run(
        capsys, "check-determinism", "--input", hgr_file, "--k", 3, "--thread-list", "1,2,4", "--repeats", 2
    )
    assert code == 0
    assert out.strip() == "deterministic runs=6 threads=1,2,4 repeats=2"


def test_check_determinism_catches_thread_dependence(capsys, hgr_file, monkeypatch):
    real = cli.run_partition

    def leaky(g, params, threads, stats=None):
        p = real(g, params, threads, stats)
        if threads == 4:
            part = p.part.copy()
            part[17] = 1 - part[17]
            return Partition.from_parts(part, p.k, g.node_weight)
        return p

    monkeypatch.setattr(cli, "run_partition", leaky)
    code, out, _ = _run(capsys, "check-determinism", "--input", hgr_file)
    assert code == 3
    assert "MISMATCH" in out and "node 17" in out


def test_sweep_csv(capsys, hgr_file, tmp_path):
    dest = tmp_path / "sweep.csv"
    code, _, _ = _run(
        capsys,
        "sweep",
        "--input", hgr_file,
        "--policies", "RAND,LDH",
        "--coarse-to-list", "10,2",
        "--refine-iters-list", "1",
        "--csv", dest,
    )
    assert code == 0
    rows = list(csv.reader(dest.open()))
    assert rows[0] == cli.CSV_HEADER
    assert [(r[0], r[1]) for r in rows[1:]] == [("LDH", "2"), ("LDH", "10"), ("RAND", "2"), ("RAND", "10")]
    assert all(r[6] in ("yes", "no") for r in rows[1:])


def test_sweep_to_stdout_defaults(capsys, hgr_file):
    code, out, _ = _run(capsys, "sweep", "--input", hgr_file)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert [r[0] for r in rows[1:]] == ["HDH", "HWD", "LDH", "LWD", "RAND"]


def test_module_entry_point(hgr_file, tmp_path):
    out_path = tmp_path / "p"
    proc = subprocess.run(
        [sys.executable, "-m", "detpart", "partition", "--input", str(hgr_file), "--output", str(out_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    part = np.loadtxt(out_path, dtype=np.int64)
    assert part.shape == (600,)
