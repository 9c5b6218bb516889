import io
import json
import subprocess
import sys

import pytest

from nsi import catalog
from nsi.cli import main
from nsi.surface import NormalSurfaceModel
from nsi.toric import export_surface_model


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, fan in [("quadric", catalog.quadric_cone()), ("p2", catalog.projective_plane()),
                      ("two", catalog.two_point()), ("p3", catalog.projective_space())]:
        p = tmp_path / f"{name}.fan"
        p.write_text(json.dumps(fan.to_dict()))
        paths[name] = str(p)
    bad = tmp_path / "bad.fan"
    bad.write_text(json.dumps({"rank": 2, "rays": [[2, 0], [0, 1], [-1, -1]]}))
    paths["bad"] = str(bad)
    paths["dir"] = tmp_path
    return paths


def test_spec_examples(files):
    assert run("pair", "--model", files["quadric"], "--d1", "0,0,1", "--d2", "0,0,1") == (0, "1/2\n", "")
    assert run("chi", "--fan", files["p2"], "--d", "1,0,0") == (0, "3\n", "")
    code, out, err = run("validate", "--fan", files["bad"])
    assert code == 1 and out == "" and err == "NotPrimitive ray 0\n"


def test_usage_errors(files):
    assert run("frobnicate")[0] == 2
    assert run("chi", "--fan", str(files["dir"] / "missing.fan"), "--d", "1,0,0")[0] == 2
    assert run("chi", "--fan", files["p2"])[0] == 2
    assert run("chi", "--fan", files["p2"], "--d", "1,x,0")[0] == 2


def test_domain_error_is_one_line(files):
    code, out, err = run("limit-pair", "--fan", files["quadric"], "--d1", "0,0,1", "--L", "0,0,1")
    assert code == 1 and err.count("\n") == 1 and err.startswith("DimensionMismatch")


def test_convergence_csv(files):
    csv_path = files["dir"] / "p2.csv"
    assert run("limit-pair", "--fan", files["p2"], "--d1", "1,0,0", "--output", str(csv_path))[:2] == (0, "1\n")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "m,chi,two_chi_over_m2"
    assert [int(l.split(",")[1]) for l in lines[1:7]] == [3, 6, 10, 15, 21, 28]
    assert lines[-1] == "limit,1/1"
    q = files["dir"] / "q.csv"
    run("limit-pair", "--fan", files["quadric"], "--d1", "0,0,1", "--output", str(q))
    assert q.read_text().splitlines()[-1] == "limit,1/2"
    z = files["dir"] / "z.csv"
    run("limit-pair", "--fan", files["quadric"], "--d1", "0,0,0", "--output", str(z))
    assert z.read_text().splitlines()[-1] == "limit,0/1"


def test_other_verbs(files):
    assert run("limit-pair", "--fan", files["quadric"], "--d1", "0,0,1", "--d2", "0,1,0")[1] == "1\n"
    assert run("limit-pair", "--fan", files["p3"], "--d1", "1,0,0,0", "--L", "1,0,0,0")[1] == "1\n"
    assert run("frobenius-ch2", "--fan", files["quadric"], "--d", "0,0,1", "--p", "2")[1] == "1/4\n"
    assert run("pullback", "--model", files["quadric"], "--d", "0,0,1")[1] == "0,0,1,1/2\n"
    assert run("pullback", "--model", files["quadric"], "--d", "0,0,1", "--sharp")[1] == "0,0,1,1\n"
    assert run("discrepancy", "--hj", "3,1")[1] == "E1 -1/3\n"
    assert run("resolve", "--hj", "7,5")[1] == "-2,-2,-3\n"
    assert run("rr-defect", "--fan", files["quadric"], "--d", "0,0,1")[1] == "-1/4\n"
    assert run("defect-sweep", "--fan", files["quadric"], "--bound", "2")[1] == "-1/4,0\n"
    assert run("validate", "--fan", files["two"])[1] == "ok: rank 2, 4 rays, 2 singular cones\n"
    resolved = run("resolve", "--fan", files["quadric"])[1].splitlines()
    assert resolved[-1] == "0,-1 cone 2"


def test_defect_csv(files):
    path = files["dir"] / "d.csv"
    run("rr-defect", "--fan", files["two"], "--d", "0,0,1,1", "--output", str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "group,defect" and lines[-1].startswith("total,")


def test_export_round_trip_and_determinism(files):
    a = files["dir"] / "a.json"
    b = files["dir"] / "b.json"
    assert run("export-model", "--fan", files["two"], "--output", str(a))[0] == 0
    assert run("export-model", "--fan", files["two"], "--output", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    model = NormalSurfaceModel.from_dict(json.loads(a.read_text()))
    assert model == export_surface_model(catalog.two_point())
    # exported models accept ray coordinates like the fan itself
    assert run("pair", "--model", str(a), "--d1", "0,0,1,0", "--d2", "0,0,1,0") == \
        run("pair", "--model", files["two"], "--d1", "0,0,1,0", "--d2", "0,0,1,0")
    assert run("discrepancy", "--model", str(a))[0] == 0


def test_bogomolov(files):
    a = files["dir"] / "m.json"
    run("export-model", "--fan", files["quadric"], "--output", str(a))
    sheaf = files["dir"] / "s.json"
    sheaf.write_text(json.dumps({"rank": 2, "c1": [0, 0, 0, 0], "local_c2": {}, "smooth_c2": "-1/2"}))
    assert run("bogomolov", "--model", str(a), "--sheaf", str(sheaf))[1] == "false delta=-2\n"


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "nsi.cli", "chi", "--fan", files["p2"], "--d", "2,0,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "6\n"
