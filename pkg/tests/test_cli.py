import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from absnorm import dual_norm, load_norm
from absnorm.cli import main

from conftest import F22, F23


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def poly(*verts):
    return {"type": "polygon", "vertices": [[str(a), str(b)] for a, b in verts]}


@pytest.fixture
def files(tmp_path):
    return {
        "f22": write(tmp_path, "f22.json", poly((1, 0), (1, "1/2"), (0, 1))),
        "f23": write(tmp_path, "f23.json", poly((1, 0), (1, "3/10"), ("3/10", 1), (0, 1))),
        "f32": write(tmp_path, "f32.json", poly((1, 0), ("9/10", "9/10"), (0, 1))),
        "linf": write(tmp_path, "linf.json", poly((1, 0), (1, 1), (0, 1))),
        "l2": write(tmp_path, "l2.json", {"type": "lp", "p": "2", "resolution": 64}),
        "bad": write(tmp_path, "bad.json", poly((1, 0), ("1/2", "1/4"), (0, 1))),
        "broken": write(tmp_path, "broken.json", '{"type": "polygon",\n "vertices": [[1, 0],,]}'),
        "floaty": write(tmp_path, "floaty.json", {"type": "polygon", "vertices": [[1, 0], [0.5, 1], [0, 1]]}),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok_and_invalid(capsys, files):
    code, out, _ = run(capsys, "validate", files["f22"])
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "validate", files["bad"])
    rep = json.loads(out)
    assert code == 2 and rep["ok"] is False
    assert any("v1+v2 >= 1" in v["invariant"] for v in rep["violations"])


def test_malformed_json_reports_position(capsys, files):
    code, _, err = run(capsys, "classify", files["broken"])
    assert code == 2
    assert "line 2" in err and "column" in err


def test_floats_rejected_in_polygon_files(capsys, files):
    code, _, err = run(capsys, "classify", files["floaty"])
    assert code == 2 and "vertices[1][0]" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", str(tmp_path / "nope.json"))
    assert code == 2 and err


def test_classify(capsys, files):
    code, out, _ = run(capsys, "classify", files["f23"])
    rep = json.loads(out)
    assert code == 0 and rep["class"] == "F_{2,3}" and rep["duality_swap"] is True


def test_dual_round_trip(capsys, files, tmp_path):
    code, out, _ = run(capsys, "dual", files["f23"])
    assert code == 0
    assert load_norm(out) == dual_norm(F23)
    d = write(tmp_path, "d.json", out)
    _, back, _ = run(capsys, "dual", d)
    assert load_norm(back) == F23


def test_output_is_canonical(capsys, files, tmp_path):
    target = tmp_path / "out.json"
    run(capsys, "dual", files["f22"], "-o", str(target))
    text = target.read_text()
    assert text.endswith("\n")
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"


def test_decide(capsys, files):
    _, out, _ = run(capsys, "decide", files["f32"])
    rep = json.loads(out)
    assert rep["domain_possible"] is False and rep["range_possible"] is True
    _, out, _ = run(capsys, "decide", files["l2"])
    rep = json.loads(out)
    assert rep["class"] == "NonPolygonalOrLarge" and rep["domain_possible"] is False


def test_margin_modes(capsys, files):
    _, out, _ = run(capsys, "margin", files["f23"], "--mode", "star_deny", "--point", "1,0")
    rep = json.loads(out)
    assert rep["margin"] == "3/13" and rep["witness"] == ["0", "1"]
    _, out, _ = run(capsys, "margin", files["linf"], "--mode", "deny", "--point", "1,1")
    assert json.loads(out)["margin"] == "0"
    _, out, _ = run(capsys, "margin", files["linf"], "--mode", "u", "--point", "1,0")
    assert json.loads(out)["u"] == 0


def test_margin_contract_violation(capsys, files):
    code, _, err = run(capsys, "margin", files["f22"], "--point", "1/2,1/2")
    assert code == 3 and "expected 1" in err


def test_grid_from_environment(capsys, files, monkeypatch):
    monkeypatch.setenv("ABSNORM_GRID", "16")
    _, out, _ = run(capsys, "margin", files["f23"], "--mode", "star_deny", "--point", "1,0")
    assert json.loads(out)["grid"] == 16
    monkeypatch.setenv("ABSNORM_GRID", "lots")
    code, _, err = run(capsys, "margin", files["f23"], "--point", "1,0")
    assert code == 2 and "ABSNORM_GRID" in err


def test_certify_auto_slice(capsys, files):
    code, out, _ = run(capsys, "certify", files["f23"], "--region", "slice", "--rows", "5")
    rep = json.loads(out)
    assert code == 0 and rep["certified"] is True
    assert rep["delta"] == "3/52"
    assert len(rep["witness_rows"]) == 5


def test_certify_on_two_edge_norm_fails_contract(capsys, files):
    code, _, _ = run(capsys, "certify", files["f22"], "--region", "slice")
    assert code == 3


def test_certify_whole_linf_not_certified(capsys, files):
    _, out, _ = run(capsys, "certify", files["linf"], "--grid", "32")
    rep = json.loads(out)
    assert rep["certified"] is False and rep["epsilon"] == "0"


def test_defect(capsys, files, tmp_path):
    spec = {"center": "from_sum", "functional": [["1", "0"], ["0", "0"]], "vector": [["-1", "1"]],
            "n_list": [4, 8, 16, 32]}
    op = write(tmp_path, "op.json", spec)
    csv_path = tmp_path / "d.csv"
    code, out, _ = run(capsys, "defect", op, "--norm", files["f22"], "--csv", str(csv_path))
    rep = json.loads(out)
    assert code == 0 and rep["pass"] is True
    assert [r["defect"] for r in rep["rows"]] == ["1/2", "1/4", "1/8", "1/16"]
    assert csv_path.read_text().splitlines()[0] == "n,normG,normT,normSum,defect"


def test_defect_needs_norm(capsys, tmp_path):
    op = write(tmp_path, "op.json", {"center": "into_sum", "functional": [["1"]], "vector": [["1"], ["1"]],
                                     "n_list": [2]})
    code, _, err = run(capsys, "defect", op)
    assert code == 2 and "norm" in err


def test_render_svg(capsys, files):
    code, out, _ = run(capsys, "render", files["f22"], "--dual", "--face", "--hats", "--slice", "1,0:1/4")
    assert code == 0
    root = ET.fromstring(out.split("\n", 1)[1])
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    classes = {el.get("class") for el in root.iter()}
    assert {"sphere", "dual", "face", "hat", "slice"} <= classes


def test_render_face_warning_for_other_classes(capsys, files):
    _, out, _ = run(capsys, "render", files["f32"], "--face")
    root = ET.fromstring(out.split("\n", 1)[1])
    assert any(el.get("class") == "warning" for el in root.iter())


def test_unknown_verb_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["explode"])
    assert exc.value.code == 2


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "absnorm", "classify", files["f22"]],
                         capture_output=True, text=True, env=dict(os.environ))
    assert res.returncode == 0
    assert json.loads(res.stdout)["class"] == "F_{2,2}"
