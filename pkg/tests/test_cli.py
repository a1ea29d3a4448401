import json
import subprocess
import sys
from pathlib import Path

import pytest

from gorigidity import io
from gorigidity.cli import main
from gorigidity.realisation import build
from gorigidity.motionspace import motion_space

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def test_analyze_triangle(capsys):
    code, out, _ = run(capsys, "analyze", INSTANCES / "triangle.json")
    rep = json.loads(out)
    assert code == 0
    assert (rep["dim_piA"], rep["dofs"], rep["rigid"]) == (3, 0, True)


def test_compact_and_pretty(capsys):
    _, compact, _ = run(capsys, "analyze", INSTANCES / "triangle.json")
    _, pretty, _ = run(capsys, "--pretty", "analyze", INSTANCES / "triangle.json")
    assert "\n" not in compact.strip() and ", " not in compact
    assert json.loads(compact) == json.loads(pretty) and "\n  " in pretty


def test_analyze_basis(capsys):
    _, out, _ = run(capsys, "analyze", "--basis", INSTANCES / "unit_square.json")
    rep = json.loads(out)
    assert len(rep["basis"]) == rep["dim_A"]


def test_bound_and_sparsity(capsys):
    _, out, _ = run(capsys, "bound", INSTANCES / "triangle.json")
    assert json.loads(out)["maxwell_bound"] == 3
    _, out, _ = run(capsys, "sparsity", INSTANCES / "triangle.json")
    rep = json.loads(out)
    assert rep["applicable"] and rep["checked"] == 64 and rep["violations"] == []


def test_banana(capsys):
    code, out, _ = run(capsys, "banana", INSTANCES / "double_banana.json", "--cut", "v,w")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "certificate" and rep["witness_dim"] == 1
    code, out, _ = run(capsys, "banana", INSTANCES / "triangle.json", "--cut", "v1")
    assert code == 0 and json.loads(out)["reason"] == "not disconnecting"


def test_banana_unknown_vertex(capsys):
    code, _, err = run(capsys, "banana", INSTANCES / "triangle.json", "--cut", "zz")
    assert code == 1 and "zz" in err


def test_oracle(capsys):
    _, out, _ = run(capsys, "oracle", INSTANCES / "double_banana.json")
    assert json.loads(out)["agree"]
    _, out, _ = run(capsys, "oracle", INSTANCES / "constrained_pair.json")
    assert json.loads(out)["agree"]
    code, _, _ = run(capsys, "oracle", INSTANCES / "scene.json")
    assert code == 1


@pytest.mark.parametrize("name, sections", [("k3.json", 6), ("c5.json", 30), ("k4_minus_edge.json", 6)])
def test_finite(capsys, name, sections):
    _, out, _ = run(capsys, "finite", INSTANCES / name)
    rep = json.loads(out)
    assert rep["sections"] == sections and rep["agree"]


def test_tensor(capsys):
    _, out, _ = run(capsys, "finite", INSTANCES / "tensor_c5.json")
    rep = json.loads(out)
    assert rep["agree"] and rep["sections"] == rep["homomorphisms"]


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and json.loads(out)["pass"]


def test_schema_flag(capsys):
    code, out, _ = run(capsys, "--schema")
    assert code == 0 and json.loads(out)["$schema"].endswith("2020-12/schema")


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.json")
    assert code == 1 and "cannot read" in err


def test_invalid_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run(capsys, "analyze", p)[0] == 1


def test_unknown_field_rejected(capsys, tmp_path):
    doc = json.loads((INSTANCES / "triangle.json").read_text())
    doc["realisation"]["colour"] = "red"
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 1 and "schema" in err


def test_floats_need_approximate(capsys, tmp_path):
    doc = json.loads((INSTANCES / "triangle.json").read_text())
    doc["realisation"]["coords"]["v2"] = [1.0, 0.25]
    p = write(tmp_path, doc)
    code, _, err = run(capsys, "analyze", p)
    assert code == 1 and "--approximate" in err
    code, out, _ = run(capsys, "analyze", "--approximate", p)
    rep = json.loads(out)
    assert code == 0 and rep["approximate"] and rep["dim_piA"] == 3


def test_approximate_rejects_parallel(capsys, tmp_path):
    from gorigidity.realisation import scene_to_parallel_instance

    par = io.encode(scene_to_parallel_instance(io.load(INSTANCES / "scene.json")))
    code, _, _ = run(capsys, "analyze", "--approximate", write(tmp_path, par))
    assert code == 1


def test_invariant_failure_exit_code(capsys, monkeypatch):
    from gorigidity import cli
    from gorigidity.errors import InvariantError

    def boom(_):
        raise InvariantError("broken")

    monkeypatch.setattr(cli, "cmd_bound", boom)
    code, _, err = run(capsys, "bound", INSTANCES / "triangle.json")
    assert code == 2 and "broken" in err


@pytest.mark.parametrize(
    "name, target", [("projective_triangle.json", "projective-dual"), ("scene.json", "scene-to-parallel")]
)
def test_dualize(capsys, tmp_path, name, target):
    code, out, _ = run(capsys, "dualize", INSTANCES / name, "--target", target)
    assert code == 0
    dual = json.loads(out)
    io.validate(dual)
    p = write(tmp_path, dual)
    _, again, _ = run(capsys, "dualize", INSTANCES / name, "--target", target)
    assert again == out
    orig = motion_space(build(io.load(INSTANCES / name))).dim_piA
    assert motion_space(build(io.load(p))).dim_piA == orig


def test_projective_double_dual_round_trip(capsys, tmp_path):
    _, once, _ = run(capsys, "dualize", INSTANCES / "projective_triangle.json", "--target", "projective-dual")
    p = write(tmp_path, json.loads(once))
    code, twice, _ = run(capsys, "dualize", p, "--target", "projective-dual")
    assert code == 0
    a = build(io.load(INSTANCES / "projective_triangle.json"))
    b = build(io.decode(json.loads(twice)))
    assert sorted(x.dim for x in a.algebras.values()) == sorted(x.dim for x in b.algebras.values())
    assert motion_space(a).dim_piA == motion_space(b).dim_piA


def test_wrong_dual_target(capsys):
    code, _, _ = run(capsys, "dualize", INSTANCES / "triangle.json", "--target", "projective-dual")
    assert code == 1


@pytest.mark.parametrize("path", sorted(p.name for p in INSTANCES.glob("*.json")))
def test_shipped_instances_validate(path):
    io.validate(json.loads((INSTANCES / path).read_text()))


def test_encode_decode_round_trip():
    for name in ("triangle.json", "projective_triangle.json", "scene.json", "constrained_pair.json"):
        doc = json.loads((INSTANCES / name).read_text())
        assert io.encode(io.decode(doc)) == io.encode(io.decode(io.encode(io.decode(doc))))


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "gorigidity", "analyze", str(INSTANCES / "triangle.json")],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(out.stdout)["rigid"] is True
