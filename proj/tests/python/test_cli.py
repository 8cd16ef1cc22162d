import json
import os
import subprocess

import pytest

CLI = os.environ.get("WECT_CLI", "wect")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


@pytest.fixture
def pgm(tmp_path):
    path = tmp_path / "block.pgm"
    path.write_bytes(b"P2\n4 4\n255\n" + b"9 9 9 9\n" * 4)
    return path


def test_no_subcommand_is_usage_error():
    assert run().returncode == 1


def test_missing_file_is_io_error(tmp_path):
    r = run("wect", str(tmp_path / "nope.pgm"), "-o", str(tmp_path / "out.json"))
    assert r.returncode == 2


def test_malformed_pgm_is_parse_error(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P5\n2 2\n255\nxy")
    r = run("wect", str(bad), "-o", str(tmp_path / "out.json"))
    assert r.returncode == 2
    assert "bad.pgm" in r.stderr


def test_convert_and_wect_pipeline(tmp_path, pgm):
    complex_path = tmp_path / "block.json"
    r = run("convert", str(pgm), "-o", str(complex_path))
    assert r.returncode == 0, r.stderr
    doc = json.loads(complex_path.read_text())
    assert len(doc["triangles"]) == 64  # 4 per pixel

    out = tmp_path / "block.wect.json"
    r = run("wect", str(complex_path), "-n", "8", "-m", "20", "-o", str(out))
    assert r.returncode == 0, r.stderr
    w = json.loads(out.read_text())
    assert w["n"] == 8
    assert w["m"] == 20
    assert len(w["matrix"]) == 20
    assert all(len(row) == 8 for row in w["matrix"])

    # reruns are byte-identical
    out2 = tmp_path / "again.json"
    assert run("wect", str(complex_path), "-n", "8", "-m", "20", "-o", str(out2)).returncode == 0
    assert out.read_bytes() == out2.read_bytes()


def test_distmat_register_and_cluster(tmp_path, pgm):
    # two separated components; the solid block normalizes to a different WECT
    split = tmp_path / "split.pgm"
    split.write_bytes(b"P2\n4 4\n255\n9 0 0 9\n0 0 0 0\n0 0 0 0\n9 0 0 9\n")
    wects = []
    for i, src in enumerate([pgm, pgm, split]):
        out = tmp_path / f"w{i}.json"
        assert run("wect", str(src), "-n", "8", "-m", "20", "-o", str(out)).returncode == 0
        wects.append(out)

    csv = tmp_path / "dist.csv"
    r = run("distmat", *map(str, wects), "-o", str(csv))
    assert r.returncode == 0, r.stderr
    rows = [line.split(",") for line in csv.read_text().strip().split("\n")]
    assert len(rows) == 3
    assert float(rows[0][1]) == 0.0  # identical inputs
    assert float(rows[0][2]) > 0.0

    labels = tmp_path / "labels.csv"
    dend = tmp_path / "dend.json"
    r = run("cluster", str(csv), "-k", "2", "-o", str(dend), "--labels", str(labels))
    assert r.returncode == 0, r.stderr
    assert labels.read_text().strip().split("\n") == ["0", "0", "1"]


def test_register_identical_inputs(tmp_path, pgm):
    out = tmp_path / "match.json"
    r = run("register", str(pgm), str(pgm), "-n", "8", "-m", "20", "-o", str(out))
    assert r.returncode == 0, r.stderr
    doc = json.loads(out.read_text())
    assert doc["shift"] == 0
    assert doc["distance"] == 0.0
