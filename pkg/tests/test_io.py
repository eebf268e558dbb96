import json
import math
from fractions import Fraction as F

import pytest

from quotientopes import io
from quotientopes.braid import ray_vector
from quotientopes.congruence import NotAnIdealError, classes_from_ideal, cube_ideal, full_ideal, sylvester_ideal
from quotientopes.quotientope import build_quotientope, default_weights, heights
from quotientopes.shards import Shard


def test_ideal_round_trip(tmp_path, essential_ideals_4):
    for ideal in essential_ideals_4[:10]:
        path = tmp_path / "ideal.json"
        io.save_ideal(ideal, path)
        loaded = io.load_ideal(path, require_closed=True)
        assert loaded.was_closed and loaded.ideal == ideal


def test_open_ideal_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 3, "shards": [{"i": 1, "j": 3, "above": [2]}]}))
    loaded = io.load_ideal(path)
    assert not loaded.was_closed
    assert loaded.witness[1] in {Shard(1, 2), Shard(2, 3)}
    assert Shard(1, 2) in loaded.ideal and Shard(2, 3) in loaded.ideal
    with pytest.raises(NotAnIdealError):
        io.load_ideal(path, require_closed=True)


def test_shard_outside_range():
    with pytest.raises(io.FormatError):
        io.ideal_from_dict({"n": 3, "shards": [{"i": 1, "j": 4, "above": []}]})


def test_weights_round_trip():
    f = default_weights(4)
    g = io.weights_from_dict(json.loads(json.dumps(io.weights_to_dict(f))))
    assert g.values == f.values
    assert g.certificate == "global"


def test_heights_round_trip():
    h = heights(sylvester_ideal(4), default_weights(4))
    d = json.loads(json.dumps(io.heights_to_dict(h)))
    assert F(d["heights"]["{1}"]) == h({1})
    assert io.heights_from_dict(d).values == h.values
    del d["heights"]["{1}"]
    with pytest.raises(io.FormatError):
        io.heights_from_dict(d)


def test_partition_round_trip():
    p = classes_from_ideal(sylvester_ideal(4))
    assert io.partition_from_dict(io.partition_to_dict(p)) == p


def test_quotientope_round_trip(tmp_path, essential_quotientopes_4):
    for q in essential_quotientopes_4:
        path = tmp_path / "q.json"
        io.save_quotientope(q, path)
        assert io.load_quotientope(path) == q


def test_quotientope_json_is_exact():
    q = build_quotientope(sylvester_ideal(3))
    d = io.quotientope_to_dict(q)
    assert d["vertices"]["123"] == ["-1/9", "-1/243", "28/243"]
    assert d["orientation_sign"] == "-"
    assert d["weights"] == "default"


def test_tampered_quotientope_rejected():
    d = io.quotientope_to_dict(build_quotientope(sylvester_ideal(3)))
    d["vertices"]["123"][0] = "0"
    with pytest.raises(io.FormatError):
        io.quotientope_from_dict(d)


def test_csv2d_hexagon():
    text = io.csv2d(build_quotientope(full_ideal(3)))
    lines = text.strip().splitlines()
    assert lines[0] == "class,x,y"
    pts = [tuple(map(float, ln.split(",")[1:])) for ln in lines[1:]]
    assert len(pts) == 6
    # the hexagon is centrally symmetric up to display rounding
    for x, y in pts:
        assert any(math.isclose(x, -a, abs_tol=1e-9) and math.isclose(y, -b, abs_tol=1e-9) for a, b in pts)


def test_projection_is_isometric():
    v = (F(1), F(-2), F(1))
    w = io.project(v, 3)
    assert math.isclose(sum(c * c for c in w), 6.0)


@pytest.mark.parametrize(
    "make, counts", [(cube_ideal, (8, 6, 12)), (sylvester_ideal, (14, 9, 21)), (full_ideal, (24, 14, 36))]
)
def test_off_counts(make, counts):
    q = build_quotientope(make(4))
    text = io.export_off(q)
    verts, faces, ne = io.parse_off(text)
    assert (len(verts), len(faces), ne) == counts
    assert text.splitlines()[1] == " ".join(map(str, counts))
    assert io.check_off_faces(q, faces) == []


def test_off_all_essential(essential_quotientopes_4):
    for q in essential_quotientopes_4:
        assert io.check_off_faces(q, io.parse_off(io.export_off(q))[1]) == []


def test_off_faces_face_outward():
    q = build_quotientope(full_ideal(4))
    _, faces, _ = io.parse_off(io.export_off(q))
    for R, face in zip(q.facet_normals, faces):
        a, b, c = (q.vertices[k] for k in face[:3])
        u = [x - y for x, y in zip(b, a)]
        v = [x - y for x, y in zip(c, a)]
        # (u, v, r(R), 1) positively oriented means counterclockwise seen from outside
        assert io._det4([u, v, ray_vector(R, 4), (1, 1, 1, 1)]) > 0


def test_off_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        io.export_off(build_quotientope(full_ideal(3)))


def test_check_off_detects_broken_cycle():
    q = build_quotientope(cube_ideal(4))
    _, faces, _ = io.parse_off(io.export_off(q))
    a, b, c, d = faces[0]
    faces[0] = [a, c, b, d]
    assert io.check_off_faces(q, faces)
