"""Serialization round-trips and the CLI surface with its exit codes."""

import json

import pytest
from click.testing import CliRunner

from conftest import random_wallspace
from wallcube import io
from wallcube.cli import main
from wallcube.generators import fig3, grid, non_hausdorff3, rbad
from wallcube.wallspace import validate


def roundtrip_equal(ws):
    doc = io.wallspace_to_dict(ws)
    ws2 = io.wallspace_from_dict(doc)
    return io.wallspace_to_dict(ws2) == doc


def test_roundtrip_bit_exact():
    for ws in (fig3(), grid(2), rbad(2), non_hausdorff3()):
        assert roundtrip_equal(ws)
        doc = io.wallspace_to_dict(ws)
        assert io.dumps(doc) == io.dumps(io.loads(io.dumps(doc)))
    for s in range(10):
        ws = random_wallspace(s)
        assert roundtrip_equal(ws)


def test_roundtrip_preserves_semantics():
    ws = grid(2)
    ws2 = io.wallspace_from_dict(io.wallspace_to_dict(ws))
    assert ws2.points == ws.points
    for w in ws.walls:
        w2 = ws2.wall(w.index)
        assert (w2.left, w2.right) == (w.left, w.right)
    assert ws2.metric.d(0, 5) == ws.metric.d(0, 5)


def test_loads_parse_error():
    from wallcube.errors import ParseError
    with pytest.raises(ParseError):
        io.loads("{nope")
    with pytest.raises(ParseError):
        io.wallspace_from_dict({"points": ["a"]})


def test_digest_and_artifact():
    d1 = io.input_digest("abc")
    assert d1 == io.input_digest("abc") and len(d1) == 16
    art = io.artifact({"x": 1}, seed=7, caps={"points": 64}, digest=d1)
    assert art["tool"] == "wallcube" and art["payload"] == {"x": 1}
    assert art["seed"] == 7 and art["input_digest"] == d1


def test_dot_outputs_stable():
    from wallcube.complex import build_dual
    cc = build_dual(grid(1), "0,0")
    assert io.skeleton_dot(cc) == io.skeleton_dot(cc)
    assert io.skeleton_dot(cc).startswith("graph skeleton {")
    assert io.transversality_dot(grid(2)).count("--") == 4


# -- CLI ---------------------------------------------------------------


def run_cli(args, stdin=None):
    return CliRunner().invoke(main, args, input=stdin)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_gen_fig3_and_validate(tmp_path):
    r = run_cli(["gen", "fig3"])
    assert r.exit_code == 0
    doc = json.loads(r.stdout)
    assert doc["payload"]["walls"][0]["index"] == 1
    path = write(tmp_path, "fig3.json", r.stdout)
    r2 = run_cli(["validate", path])
    assert r2.exit_code == 0
    assert json.loads(r2.stdout)["payload"]["ok"] is True


def test_cli_gen_non_hausdorff():
    r = run_cli(["gen", "nonHausdorff3"])
    doc = json.loads(r.stdout)["payload"]
    assert doc["points"] == ["x", "y", "z"]
    (w,) = doc["walls"]
    assert sorted(w["left"]) == ["x", "z"] and sorted(w["right"]) == ["y", "z"]


def test_cli_validate_domain_error(tmp_path):
    bad = {"points": ["x", "y"],
           "walls": [{"index": 0, "left": ["x"], "right": ["y"]},
                     {"index": 1, "left": ["y"], "right": ["x"]}]}
    path = write(tmp_path, "bad.json", json.dumps(bad))
    r = run_cli(["validate", path])
    assert r.exit_code == 1
    assert any(e["kind"] == "DuplicateGenuinePartition"
               for e in json.loads(r.stdout)["payload"]["errors"])


def test_cli_parse_error(tmp_path):
    path = write(tmp_path, "garbage.json", "{oops")
    r = run_cli(["validate", path])
    assert r.exit_code == 2


def test_cli_build_grid(tmp_path):
    gen = run_cli(["gen", "grid", "3"])
    path = write(tmp_path, "grid3.json", gen.stdout)
    export = str(tmp_path / "cc.json")
    dot = str(tmp_path / "cc.dot")
    r = run_cli(["build", path, "--export", export, "--dot", dot])
    assert r.exit_code == 0
    summary = json.loads(r.stdout)["payload"]
    assert summary["vertices"] == 16 and summary["edges"] == 24
    assert summary["cubes_by_dim"]["2"] == 9 or \
        summary["cubes_by_dim"].get(2) == 9
    assert summary["dimension"] == 2
    cc_doc = json.loads(open(export).read())
    assert len(cc_doc["vertices"]) == 16
    assert open(dot).read().startswith("graph skeleton {")


def test_cli_build_cap_exit(tmp_path):
    gen = run_cli(["gen", "grid", "3"])
    path = write(tmp_path, "grid3.json", gen.stdout)
    r = run_cli(["build", path, "--cap-vertices", "2"])
    assert r.exit_code == 3


def test_cli_build_stdin():
    gen = run_cli(["gen", "fig3"])
    r = run_cli(["build", "-"], stdin=gen.stdout)
    assert r.exit_code == 0
    assert json.loads(r.stdout)["payload"]["dimension"] == 3


def test_cli_verify_pass(tmp_path):
    gen = run_cli(["gen", "grid", "2"])
    path = write(tmp_path, "grid2.json", gen.stdout)
    r = run_cli(["verify", path])
    assert r.exit_code == 0
    out = json.loads(r.stdout)["payload"]
    assert out["ok"] is True
    assert set(out["checks"]) == {"npc", "connected", "simply-connected",
                                  "maximal-bijection", "convexity"}


def test_cli_diagnose(tmp_path):
    gen = run_cli(["gen", "grid", "4"])
    path = write(tmp_path, "grid4.json", gen.stdout)
    r = run_cli(["diagnose", path, "--property", "linear-separation"])
    assert r.exit_code == 0
    rep = json.loads(r.stdout)["payload"]
    assert rep["verdict"] == "holds" and rep["value"] == 1.0
    assert rep["parameters"]["epsilon"] == 0.0
    r2 = run_cli(["diagnose", path, "--property", "ball-ball",
                  "--params", '{"r": 1}'])
    assert r2.exit_code == 0
    r3 = run_cli(["diagnose", path, "--property", "degree-profile"])
    assert json.loads(r3.stdout)["payload"]["dimension"] == 2


def test_cli_diagnose_metric_required(tmp_path):
    gen = run_cli(["gen", "fig3"])
    path = write(tmp_path, "fig3.json", gen.stdout)
    r = run_cli(["diagnose", path, "--property", "ball-ball"])
    assert r.exit_code == 1


def test_cli_gen_unknown():
    r = run_cli(["gen", "mystery"])
    assert r.exit_code == 1


def test_cli_act(tmp_path):
    spec = {
        "group": {"kind": "FreeAbelian", "d": 2},
        "radius": 2,
        "hwalls": [
            {"subgroup": {"kind": "coordinate", "coords": [1]},
             "rule": "coordinate", "axis": 0},
            {"subgroup": {"kind": "coordinate", "coords": [0]},
             "rule": "coordinate", "axis": 1},
        ],
        "peripheries": [{"kind": "coordinate", "coords": [0, 1]}],
        "variant": {"kind": "Ur", "r": 0},
    }
    path = write(tmp_path, "act.json", json.dumps(spec))
    r = run_cli(["act", path])
    assert r.exit_code == 0
    payload = json.loads(r.stdout)["payload"]
    assert payload["hwall_reports"][0]["ok"] is True
    assert payload["decomposition"]["least_m"] == 0
    assert payload["decomposition"]["coverage_violations"] == []


def test_cli_sweep():
    r = run_cli(["sweep", "--generator", "grid", "--ns", "1,2",
                 "--property", "degree-profile"])
    assert r.exit_code == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "n,vertices,max_degree,dimension"
    assert lines[1].startswith("1,4,") and lines[2].startswith("2,9,")


def test_cli_sweep_compact_wall():
    r = run_cli(["sweep", "--generator", "rbad", "--ns", "2,4",
                 "--property", "compact-wall"])
    assert r.exit_code == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "n,verdict,f"
    assert all(line.split(",")[1] == "holds" for line in lines[1:])
