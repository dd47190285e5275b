import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qlovasz import channels, graphs, quantities
from qlovasz.cli import CSV_COLUMNS, main, run, write_channel


def family_file(tmp_path, alpha):
    path = tmp_path / "ch.json"
    code, _ = run(["family", "--alpha", repr(alpha), "--out", str(path)])
    assert code == 0
    return path


def test_family_entries(tmp_path):
    doc = json.loads(family_file(tmp_path, 0.7853981634).read_text())
    assert doc["kraus"][0][0][1] == pytest.approx([0.7071068, 0.0], abs=1e-7)
    doc = json.loads(family_file(tmp_path, 0.5235988).read_text())
    assert doc["kraus"][1][2][1] == pytest.approx([0.8660254, 0.0], abs=1e-7)
    assert doc["dim_in"] == doc["dim_out"] == 3


def test_family_default_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, text = run(["family", "--alpha", "0.5"])
    assert code == 0
    assert (tmp_path / text.strip()).exists()


@pytest.mark.parametrize("alpha", ["0", "-1", "0.8", "nan", "abc"])
def test_family_rejects_bad_alpha(alpha):
    assert run(["family", "--alpha", alpha])[0] == 1


def test_compute_theta_pi4(tmp_path):
    path = family_file(tmp_path, np.pi / 4)
    code, text = run(["compute", "--channel", str(path), "--quantity", "theta"])
    assert code == 0
    rows = json.loads(text)
    assert len(rows) == 1 and rows[0]["quantity"] == "theta"
    assert rows[0]["value"] == pytest.approx(4.5, abs=1e-6)
    assert rows[0]["abs_error"] <= 1e-6


def test_compute_packing_pentagon(tmp_path):
    path = tmp_path / "pentagon.json"
    p = channels.pentagon_matrix()
    write_channel(path, channels.classical_channel(p, "pentagon"), classical=p)
    code, text = run(["compute", "--channel", str(path), "--quantity", "packing", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["quantity"] == "packing" and float(rows[0]["value"]) == pytest.approx(2.5)
    assert rows[0]["closed_form"] == "" and rows[0]["abs_error"] == ""


def test_compute_all_csv_schema(tmp_path):
    path = family_file(tmp_path, 0.4)
    code, text = run(["compute", "--channel", str(path), "--quantity", "all", "--format", "csv"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    rows = list(csv.reader(lines[1:]))
    assert len(rows) == 4 and all(len(r) == len(CSV_COLUMNS) for r in rows)
    value = rows[0][CSV_COLUMNS.index("value")]
    assert "." in value and len(value.replace(".", "").lstrip("0")) <= 10


@pytest.mark.parametrize("content", ["not json", "[]", '{"name": "x"}',
                                     '{"kraus": [[[[1, 0]]]], "classical": [[1]]}',
                                     '{"kraus": [[[1, 0], [0, 1]]]}',
                                     '{"kraus": [[[[0.5, 0]]]]}',
                                     '{"classical": [[0.5], [0.4]]}'])
def test_compute_malformed(tmp_path, content):
    path = tmp_path / "malformed.json"
    path.write_text(content)
    assert run(["compute", "--channel", str(path)])[0] == 1


def test_compute_missing_file(tmp_path):
    assert run(["compute", "--channel", str(tmp_path / "absent.json")])[0] == 1


def test_compute_solver_failure_exit(tmp_path):
    path = family_file(tmp_path, 0.4)
    assert run(["compute", "--channel", str(path), "--quantity", "sigma", "--max-iters", "1"])[0] == 2


def test_round_trip_bit_exact(tmp_path):
    alpha = 0.6180339887
    path = family_file(tmp_path, alpha)
    ch = channels.family_nalpha(alpha)
    from qlovasz.cli import read_channel
    loaded, _, a = read_channel(path)
    assert a == alpha
    assert all(np.array_equal(x, y) for x, y in zip(loaded.kraus, ch.kraus))
    _, text = run(["compute", "--channel", str(path), "--quantity", "all"])
    rows = {r["quantity"]: r["value"] for r in json.loads(text)}
    assert rows["theta"] == quantities.theta(graphs.ncgraph(ch)).value
    assert rows["upsilon"] == quantities.upsilon(ch).value
    assert rows["sigma"] == quantities.sigma(ch).value
    assert rows["aram"] == quantities.aram(ch).value


def test_compute_dump(tmp_path):
    path = family_file(tmp_path, 0.4)
    dump = tmp_path / "dump.txt"
    code, _ = run(["compute", "--channel", str(path), "--quantity", "sigma", "--dump", str(dump)])
    assert code == 0
    text = dump.read_text()
    assert text.startswith("# conic problem: sigma")
    assert "constraint" in text


def test_sweep_rows(tmp_path):
    out = tmp_path / "sweep.csv"
    code, _ = run(["sweep", "--from", "0.1", "--to", "0.7853981634", "--steps", "5", "--out", str(out),
                   "--jobs", "3"])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 20
    assert all(float(r["abs_error"]) <= 1e-6 for r in rows)
    alphas = [float(r["alpha"]) for r in rows]
    assert alphas == sorted(alphas)


def test_sweep_single_step():
    code, text = run(["sweep", "--from", "0.3", "--to", "0.7", "--steps", "1"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 4 and {float(r["alpha"]) for r in rows} == {0.3}


@pytest.mark.parametrize("args", [["--from", "0.5", "--to", "0.1", "--steps", "3"],
                                  ["--from", "0.1", "--to", "0.5", "--steps", "0"],
                                  ["--from", "0.1", "--to", "1.0", "--steps", "3"]])
def test_sweep_rejects_bad_ranges(args):
    assert run(["sweep"] + args)[0] == 1


def test_verify_paper_single_alpha():
    code, text = run(["verify-paper", "--alphas", "0.3"])
    assert code == 0
    assert "FAIL" not in text


def test_verify_paper_out_of_range():
    assert run(["verify-paper", "--alphas", "1.0"])[0] == 1


def test_unknown_verb_is_input_error():
    assert main(["bogus"], io.StringIO()) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qlovasz", "family", "--alpha", "0",
                           "--out", str(tmp_path / "x.json")], capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stderr


def test_verify_paper_defaults():
    code, text = run(["verify-paper"])
    assert code == 0
    assert "FAIL" not in text
    sep = [line for line in text.splitlines() if line.startswith("separation") and "0.7853981634" in line]
    assert sep and "0.169925" in sep[0]
