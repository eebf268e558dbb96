import json
import subprocess
import sys

import pytest

from quotientopes.cli import main
from quotientopes.congruence import sylvester_ideal
from quotientopes.io import heights_to_dict, parse_off
from quotientopes.quotientope import default_weights, heights


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_build_sylvester(tmp_path, capsys):
    out = tmp_path / "asso.json"
    code, text, _ = run(["build", "--n", "4", "--preset", "sylvester", "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 14
    assert data["source"] == "preset:sylvester"
    assert (tmp_path / "asso.off").exists()
    assert "14 vertices" in text


def test_build_hexagon_csv(tmp_path, capsys):
    out = tmp_path / "hex.json"
    code, _, _ = run(["build", "--n", "3", "--preset", "full", "--format", "csv2d", "--out", str(out)], capsys)
    assert code == 0
    rows = (tmp_path / "hex.csv").read_text().strip().splitlines()
    assert rows[0] == "class,x,y" and len(rows) == 7


def test_build_cube_off(tmp_path, capsys):
    out = tmp_path / "cube.json"
    code, _, _ = run(["build", "--n", "4", "--preset", "cube", "--format", "off", "--out", str(out)], capsys)
    assert code == 0
    verts, faces, ne = parse_off((tmp_path / "cube.off").read_text())
    assert (len(verts), len(faces), ne) == (8, 6, 12)


def test_build_off_needs_n4(tmp_path, capsys):
    code, _, err = run(["build", "--n", "3", "--preset", "full", "--format", "off", "--out", str(tmp_path / "x.json")], capsys)
    assert code == 2
    assert json.loads(err)["stage"] == "export"


def test_build_generators(tmp_path, capsys):
    out = tmp_path / "g.json"
    code, _, _ = run(["build", "--n", "3", "--generators", "1-3:[2]", "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 5
    assert len(data["ideal"]) == 3


def test_build_closes_open_ideal_file(tmp_path, capsys):
    src = tmp_path / "open.json"
    src.write_text(json.dumps({"n": 3, "shards": [{"i": 1, "j": 3, "above": [2]}]}))
    out = tmp_path / "q.json"
    code, _, _ = run(["build", "--n", "3", "--ideal", str(src), "--out", str(out)], capsys)
    assert code == 0
    assert json.loads(out.read_text())["closed_on_load"] is True


def test_build_scale_guard(tmp_path, capsys):
    code, _, _ = run(["build", "--n", "8", "--preset", "full", "--out", str(tmp_path / "x.json")], capsys)
    assert code == 4


def test_build_bad_weights(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(
        json.dumps(
            {"n": 3, "weights": [{"i": a, "j": b, "above": s, "f": "1"} for a, b, s in
                                 [(1, 2, []), (2, 3, []), (1, 3, []), (1, 3, [2])]]}
        )
    )
    code, _, err = run(["build", "--n", "3", "--preset", "full", "--weights", str(w), "--out", str(tmp_path / "x.json")], capsys)
    assert code == 2
    assert json.loads(err)["stage"] == "weights"


def test_enumerate_n4(tmp_path, capsys):
    out = tmp_path / "ideals.json"
    code, _, _ = run(["enumerate", "--n", "4", "--essential", "--out", str(out)], capsys)
    assert code == 0
    entries = json.loads(out.read_text())
    assert len(entries) == 47
    assert all(e["dimension"] == 3 and e["essential"] for e in entries)


def test_enumerate_n3(capsys):
    code, text, _ = run(["enumerate", "--n", "3", "--essential"], capsys)
    assert code == 0
    assert sorted(e["vertices"] for e in json.loads(text)) == [4, 5, 5, 6]
    code, text, _ = run(["enumerate", "--n", "3"], capsys)
    assert len(json.loads(text)) == 7


def test_enumerate_n5_guard(capsys):
    code, _, err = run(["enumerate", "--n", "5"], capsys)
    assert code == 4
    assert json.loads(err)["stage"] == "enumerate"


def test_enumerate_n5_sample(capsys):
    code, text, _ = run(["enumerate", "--n", "5", "--sample", "2", "--seed", "3", "--essential"], capsys)
    assert code == 0
    assert [e["dimension"] for e in json.loads(text)] == [4, 4]


def test_verify_sylvester(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, _, err = run(["verify", "--n", "4", "--preset", "sylvester", "--verify", "all", "--out", str(out)], capsys)
    assert code == 0
    report = json.loads(out.read_text())
    assert report["passed"]
    names = {c["check"] for c in report["checks"]}
    assert {"wall-inequality", "normal-fan", "oriented-graph", "lattice-congruence-oracle"} <= names
    assert "FAIL" not in err


def test_verify_perturbed_heights(tmp_path, capsys):
    h = heights(sylvester_ideal(4), default_weights(4))
    data = heights_to_dict(h.with_value({1}, h({1}) + 1))
    path = tmp_path / "h.json"
    path.write_text(json.dumps(data))
    out = tmp_path / "report.json"
    code, _, _ = run(["verify", "--n", "4", "--preset", "sylvester", "--heights", str(path), "--out", str(out)], capsys)
    assert code == 3
    wall = next(c for c in json.loads(out.read_text())["checks"] if c["check"] == "wall-inequality")
    assert not wall["passed"]
    lower, upper, got, expected = wall["witness"]
    assert len(lower) == len(upper) == 4


def test_verify_rejects_open_ideal(tmp_path, capsys):
    src = tmp_path / "open.json"
    src.write_text(json.dumps({"n": 3, "shards": [{"i": 1, "j": 3, "above": [2]}]}))
    code, _, err = run(["verify", "--n", "3", "--ideal", str(src)], capsys)
    assert code == 2
    report = json.loads(err)
    assert report["witness"]["member"] == "1-3:[2]"
    assert report["witness"]["missing_forcer"] in {"1-2:[]", "2-3:[]"}


def test_verify_sampled_n5(capsys):
    code, text, _ = run(["verify", "--n", "5", "--preset", "sylvester", "--verify", "all", "--seed", "1"], capsys)
    assert code == 0
    assert json.loads(text)["passed"]


def test_two_sources_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["build", "--n", "3", "--preset", "full", "--generators", "1-2:[]"])


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "quotientopes", "enumerate", "--n", "3", "--essential"],
        capture_output=True, text=True, check=True,
    )
    assert len(json.loads(proc.stdout)) == 4
