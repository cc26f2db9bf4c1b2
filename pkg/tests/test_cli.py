import csv
import json
import math

import numpy as np
import pytest

from ctrkit import Tube, TubeSet, io
from ctrkit.cli import main, verify_bending_trials


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def tube_entry(od, r, **kw):
    d = {"od_mm": od, "wall_mm": 0.6, "precurvature_radius_mm": r, "curved_len_mm": 50.0,
         "straight_len_mm": 100.0, "material": "nylon12-mjf"}
    d.update(kw)
    return d


@pytest.fixture
def catalog(tmp_path):
    return write_json(tmp_path / "mat.json", {"name": "nylon12-mjf", "youngs_modulus_gpa": 1.51,
                                               "elastic_limit_strain": 0.02, "break_strain": 0.177})


@pytest.fixture
def trial1_file(tmp_path):
    return write_json(tmp_path / "trial1.json", {"clearance_mm": 0.4, "tubes": [tube_entry(3.8, 69.0), tube_entry(2.2, 21.9)]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# file formats


def test_material_catalog_gpa_conversion(catalog):
    m = io.load_materials(catalog)["nylon12-mjf"]
    assert m.youngs_modulus == pytest.approx(1510.0)
    assert io.material_to_dict(m)["youngs_modulus_gpa"] == pytest.approx(1.51)


def test_material_catalog_list(tmp_path):
    path = write_json(tmp_path / "m.json", [
        {"name": "a", "youngs_modulus_gpa": 1.0, "elastic_limit_strain": 0.02, "break_strain": 0.1},
        {"name": "b", "youngs_modulus_gpa": 2.0, "elastic_limit_strain": 0.03, "break_strain": 0.2},
    ])
    cat = io.load_materials(path)
    assert cat["b"].youngs_modulus == 2000.0 and "nylon12-mjf" in cat


def test_material_missing_field(tmp_path):
    with pytest.raises(io.FormatError, match="youngs_modulus_gpa"):
        io.load_materials(write_json(tmp_path / "m.json", {"name": "x"}))


def test_tubeset_round_trip(tmp_path, trial1_file, catalog):
    ts = io.load_tubeset(trial1_file, io.load_materials(catalog))
    assert len(ts) == 2 and ts.clearance == 0.4
    assert ts[0].precurvature == pytest.approx(1 / 69.0)
    io.dump_tubeset(ts, tmp_path / "back.json")
    back = io.load_tubeset(tmp_path / "back.json")
    assert back.clearance == ts.clearance
    for a, b in zip(back, ts):
        assert (a.od, a.wall, a.curved_len, a.straight_len, a.material) == (b.od, b.wall, b.curved_len, b.straight_len, b.material)
        assert a.precurvature == pytest.approx(b.precurvature, rel=1e-15)


def test_tubeset_straight_and_flipped(tmp_path):
    ts = io.load_tubeset(write_json(tmp_path / "t.json", {"tubes": [tube_entry(3.8, None), tube_entry(2.2, -30.0)]}))
    assert ts[0].precurvature == 0.0 and ts[1].precurvature == pytest.approx(-1 / 30)


def test_tubeset_interference(tmp_path):
    path = write_json(tmp_path / "bad.json", {"clearance_mm": 0.4, "tubes": [tube_entry(3.8, 69.0), tube_entry(2.8, 21.9)]})
    with pytest.raises(io.FormatError, match="clearance"):
        io.load_tubeset(path)


def test_tubeset_unknown_material(tmp_path):
    with pytest.raises(io.FormatError, match="unknown material"):
        io.load_tubeset(write_json(tmp_path / "t.json", {"tubes": [tube_entry(3.8, 69.0, material="pla")]}))


def test_points_csv_comments_and_blanks(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("# digitized\nx_mm,y_mm\n0,0\n\n2,0\n# mid\n1,1\n")
    assert io.load_points(p) == [(0, 0), (2, 0), (1, 1)]


def test_points_bad_header(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("x,y\n0,0\n")
    with pytest.raises(io.FormatError, match="expected header"):
        io.load_points(p)


def test_fatigue_csv_rejects_zero_radius(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("cycle,radius_mm\n0,28.26\n10,0\n")
    with pytest.raises(io.FormatError, match="zero radius"):
        io.load_fatigue(p)
    p.write_text("cycle,radius_mm\n0,28.26\n10,\n")
    with pytest.raises(io.FormatError, match="missing"):
        io.load_fatigue(p)


def test_constraints_file(tmp_path):
    c = io.load_constraints(write_json(tmp_path / "c.json", {"od_min_mm": 2.2, "max_recoverable_strain": 0.06}))
    assert c.od_min == 2.2 and c.max_recoverable_strain == 0.06 and c.radius_max == 100.0
    with pytest.raises(io.FormatError, match="unknown fields"):
        io.load_constraints(write_json(tmp_path / "d.json", {"od_minimum": 2.2}))


def test_shape_csv_and_svg(tmp_path, trial1_file):
    from ctrkit import compose_shape

    ts = io.load_tubeset(trial1_file)
    shape = compose_shape(ts, [150.0, 150.0])
    io.write_shape_csv(shape, tmp_path / "s.csv", 1.0)
    rows = list(csv.reader(open(tmp_path / "s.csv")))
    assert rows[0] == ["s_mm", "x_mm", "y_mm", "kappa_per_mm"]
    assert len(rows) == 152 and float(rows[-1][0]) == pytest.approx(150.0)
    io.write_shape_svg(shape, tmp_path / "s.svg", 1.0)
    svg = (tmp_path / "s.svg").read_text()
    assert svg.startswith("<svg") and "<polyline" in svg


# commands


def test_predict_trial1(capsys, trial1_file, catalog):
    code, out, _ = run(capsys, "predict", trial1_file, catalog)
    assert code == 0
    assert "equilibrium R*_mm: 54.75" in out
    assert "12068.24" in out


def test_predict_json_and_csv(capsys, tmp_path, trial1_file):
    out_csv = tmp_path / "r.csv"
    code, out, _ = run(capsys, "--json", "--output", str(out_csv), "predict", trial1_file)
    rep = json.loads(out)
    assert code == 0 and rep["command"] == "predict"
    assert rep["outputs"][-1]["radius_mm"] == pytest.approx(54.746052631578945)
    assert rep["outputs"][1]["exceeds_elastic_limit"] is True
    assert out_csv.read_text().startswith("tube,")


def test_predict_single_tube(capsys, tmp_path):
    path = write_json(tmp_path / "one.json", {"tubes": [tube_entry(3.2, 28.26)]})
    code, out, _ = run(capsys, "predict", path)
    assert code == 0 and "equilibrium R*_mm: 28.26" in out


def test_predict_interference_exit(capsys, tmp_path):
    path = write_json(tmp_path / "bad.json", {"clearance_mm": 0.4, "tubes": [tube_entry(3.8, 69.0), tube_entry(2.8, 21.9)]})
    code, _, err = run(capsys, "predict", path)
    assert code != 0 and "clearance" in err


def test_predict_shape_export(capsys, tmp_path, trial1_file):
    code, _, _ = run(capsys, "predict", trial1_file, "--shape-csv", str(tmp_path / "s.csv"), "--svg", str(tmp_path / "s.svg"))
    assert code == 0 and (tmp_path / "s.csv").exists() and (tmp_path / "s.svg").exists()


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = out.splitlines()
    assert "54.75" in lines[1] and "match" in lines[1]
    assert "36.36" in lines[2] and "match" in lines[2]
    assert "60.37" in lines[3] and "MISMATCH" in lines[3]
    assert "39.16" in lines[4] and "MISMATCH" in lines[4]
    assert sum(1 for ln in lines if ln.startswith("warning:")) == 2


def test_verify_rows():
    rows = verify_bending_trials()
    assert [r["match"] for r in rows] == [True, True, False, False]
    assert [round(r["computed_R_mm"], 2) for r in rows] == [54.75, 36.36, 60.37, 39.16]


def test_verify_json_warnings(capsys):
    _, out, _ = run(capsys, "--json", "verify")
    assert len(json.loads(out)["warnings"]) == 2


def test_fit_circle_modes_agree(capsys, tmp_path):
    p = tmp_path / "pts.csv"
    a = np.radians([10, 40, 80])
    p.write_text("x_mm,y_mm\n" + "".join(f"{5 + 28.26 * math.cos(t)!r},{-3 + 28.26 * math.sin(t)!r}\n" for t in a))
    _, lsq, _ = run(capsys, "--json", "fit-circle", str(p), "--lsq")
    _, three, _ = run(capsys, "--json", "fit-circle", str(p), "--three-point")
    r1 = json.loads(lsq)["outputs"][0]["radius_mm"]
    r2 = json.loads(three)["outputs"][0]["radius_mm"]
    assert abs(r1 - 28.26) < 1e-9 and abs(r1 - r2) < 1e-9


def test_fit_circle_collinear_exit(capsys, tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("x_mm,y_mm\n0,0\n1,0\n2,0\n")
    assert run(capsys, "fit-circle", str(p), "--three-point")[0] != 0
    assert run(capsys, "fit-circle", str(p))[0] != 0
    p.write_text("x_mm,y_mm\n0,0\n1,0\n")
    code, _, err = run(capsys, "fit-circle", str(p))
    assert code != 0 and "insufficient points" in err


def test_tensile_cmd(capsys, tmp_path):
    p = tmp_path / "t.csv"
    e = np.round(np.arange(0, 0.1775, 0.001), 12)
    s = np.where(e <= 0.02, 1510 * e, 1510 * 0.02 + 300 * (e - 0.02))
    p.write_text("strain,stress_mpa\n" + "".join(f"{float(a)!r},{float(b)!r}\n" for a, b in zip(e, s)))
    code, out, _ = run(capsys, "tensile", str(p), "--window", "0.005", "--tol", "0.02")
    assert code == 0
    assert "youngs_modulus_MPa: 1510.00" in out and "youngs_modulus_GPa: 1.5100" in out
    assert "proportional_limit_strain: 0.0210" in out and "break_strain: 0.1770" in out


def test_fatigue_cmd(capsys, tmp_path):
    ts = write_json(tmp_path / "ft.json", {"tubes": [tube_entry(3.2, 28.26, wall_mm=0.6)]})
    p = tmp_path / "f.csv"
    p.write_text("cycle,radius_mm\n0,28.26\n100,31.0\n200,34.0\n")
    code, out, _ = run(capsys, "fatigue", str(p), ts)
    assert code == 0
    assert "peak_strain: 0.05662" in out and "exceeds elastic limit" in out
    assert "final_retention: 0.8312" in out


def test_design_cmd(capsys, tmp_path):
    c = write_json(tmp_path / "c.json", {"od_min_mm": 2.2, "od_max_mm": 4.0, "wall_min_mm": 0.6, "min_clearance_mm": 0.4,
                                        "max_recoverable_strain": 0.06, "radius_min_mm": 20, "radius_max_mm": 100,
                                        "curved_len_mm": 50})
    res = tmp_path / "designs.csv"
    code, out, _ = run(capsys, "design", c, "--target-radius", "54.7", "--n-radii", "8", "--results", str(res))
    assert code == 0
    rows = list(csv.reader(open(res)))
    assert rows[0] == list(io.DESIGN_HEADER)
    assert len(rows) > 2
    assert "rank" in out
    scores = [float(r[-1]) for r in rows[1:]]
    assert scores == sorted(scores)


def test_design_empty_is_not_error(capsys, tmp_path):
    c = write_json(tmp_path / "c.json", {"od_min_mm": 2.2, "od_max_mm": 3.0})
    code, out, _ = run(capsys, "design", c, "--target-radius", "50", "--results", str(tmp_path / "d.csv"))
    assert code == 0 and "feasible designs: 0" in out


def test_determinism(capsys, tmp_path, trial1_file):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "--json", "predict", trial1_file)
        outs.append(out)
    assert outs[0] == outs[1]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    c = write_json(tmp_path / "c.json", {"max_recoverable_strain": 0.04})
    run(capsys, "design", c, "--target-radius", "40", "--results", str(a))
    run(capsys, "design", c, "--target-radius", "40", "--results", str(b), "--workers", "3")
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "ctrkit", "verify"], capture_output=True, text=True)
    assert r.returncode == 0 and "MISMATCH" in r.stdout
