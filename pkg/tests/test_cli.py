import json

import pytest

from ptspectra.cli import EXIT_CONFIG, EXIT_OK, main
from ptspectra.records import records_from_json


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_spectrum_real(capsys, tmp_path):
    path = tmp_path / "exact.json"
    code, _, _ = run(["exact-spectrum", "--e-max", "30", "-o", str(path)], capsys)
    assert code == EXIT_OK
    recs = records_from_json(path.read_text())
    assert len(recs) == 1 and abs(recs[0].value.real - 1.258092) < 1e-5


def test_exact_spectrum_complex_pairs(capsys):
    code, out, _ = run(["exact-spectrum", "--complex", "--window", "0,20,-15,15"], capsys)
    assert code == EXIT_OK
    vals = [r.value for r in records_from_json(out)]
    assert len(vals) == 11
    for z in vals:
        assert min(abs(z.conjugate() - w) for w in vals) <= 2e-10


def test_exact_spectrum_bad_window(capsys):
    code, _, err = run(["exact-spectrum", "--e-max", "-1"], capsys)
    assert code == EXIT_CONFIG and "e_min < e_max" in err


def test_shoot_harmonic_csv(capsys):
    code, out, _ = run(["shoot", "--a", "0", "--b", "2", "--e-max", "20", "--format", "csv"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("index,re,im")
    vals = [float(l.split(",")[1]) for l in lines[1:]]
    assert [round(v, 4) for v in vals] == [1, 3, 5, 7, 9, 11, 13, 15, 17, 19]


def test_shoot_ix_cubed(capsys):
    code, out, _ = run(["shoot", "--a", "1", "--b", "2", "--e-max", "12"], capsys)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert len(payload["records"]) == 4
    assert payload["config"]["x_max"] > 0


def test_shoot_rejects_a_ge_2(capsys):
    code, _, err = run(["shoot", "--a", "2.5", "--b", "1"], capsys)
    assert code == EXIT_CONFIG and "a < 2" in err


def test_contour_json_small(capsys, tmp_path):
    path = tmp_path / "grid.json"
    code, _, _ = run(["contour", "--n-re", "4", "--n-im", "4", "-o", str(path)], capsys)
    assert code == EXIT_OK
    g = json.loads(path.read_text())
    assert g["n_re"] == 4 and len(g["re_values"]) == 16 and len(g["im_values"]) == 16
    assert g["window"] == [0.0, 20.0, -15.0, 15.0]


def test_contour_default_has_real_axis_curve(capsys, tmp_path):
    path = tmp_path / "grid.json"
    assert main(["contour", "-o", str(path)]) == EXIT_OK
    g = json.loads(path.read_text())
    on_axis = [p for line in g["im_zero_curves"] for p in line if p[1] == 0.0]
    assert len(on_axis) > 150


def test_contour_csv_with_sidecar(capsys, tmp_path):
    path = tmp_path / "grid.csv"
    code, _, _ = run(["contour", "--n-re", "21", "--n-im", "21", "--format", "csv", "-o", str(path)], capsys)
    assert code == EXIT_OK
    rows = path.read_text().strip().splitlines()
    assert rows[0] == "re_E,im_E,re_F,im_F" and len(rows) == 1 + 21 * 21
    side = path.with_suffix(".curves.csv").read_text().splitlines()
    assert side[0] == "family,curve,re_E,im_E" and len(side) > 1


def test_contour_csv_needs_output(capsys):
    code, _, _ = run(["contour", "--format", "csv"], capsys)
    assert code == EXIT_CONFIG


def test_sweep_one_cell_csv(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, _, _ = run(["sweep", "--a-values", "1", "--b-values", "1", "--format", "csv", "-o", str(path)], capsys)
    assert code == EXIT_OK
    rows = path.read_text().strip().splitlines()
    assert rows[0] == "a,b,index,eigenvalue,residual,exhausted,e_min,e_max"
    assert len(rows) == 2 and rows[1].startswith("1.0,1.0,0,1.258")
    counts = path.with_suffix(".counts.csv").read_text().strip().splitlines()
    assert counts[1].startswith("1.0,1.0,1,true")


def test_sweep_config_file(capsys, tmp_path):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({"a_values": [0.5, 1.0], "b_values": "1", "windows": {"0.5,1": [0, 8]}}))
    code, out, _ = run(["sweep", "--config", str(cfg)], capsys)
    assert code == EXIT_OK
    cells = json.loads(out)["cells"]
    assert [(c["a"], c["b"], c["count"]) for c in cells] == [(0.5, 1.0, 3), (1.0, 1.0, 1)]
    assert cells[0]["e_max"] == 8.0


def test_flags_override_config_file(capsys, tmp_path):
    cfg = tmp_path / "shoot.json"
    cfg.write_text(json.dumps({"a": 0, "b": 2, "e_max": 20}))
    code, out, _ = run(["shoot", "--config", str(cfg), "--e-max", "6"], capsys)
    assert code == EXIT_OK
    assert len(json.loads(out)["records"]) == 3


@pytest.mark.parametrize("content", ["{not json", "[1, 2]", json.dumps({"bogus": 1}), json.dumps({"n_scan": "x"})])
def test_malformed_config_exits_2(capsys, tmp_path, content):
    cfg = tmp_path / "bad.json"
    cfg.write_text(content)
    code, _, _ = run(["sweep", "--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG


def test_wkb_estimate(capsys):
    code, out, _ = run(["wkb-estimate", "--b", "2", "--n", "5"], capsys)
    assert code == EXIT_OK
    rec = records_from_json(out)[0]
    assert rec.index == 5 and rec.value.real == pytest.approx(11, abs=1e-12)


def test_json_round_trip_bit_equal(capsys):
    code, out, _ = run(["shoot", "--a", "1", "--b", "2", "--e-max", "12"], capsys)
    recs = records_from_json(out)
    again = json.loads(json.dumps({"records": [r.to_dict() for r in recs]}))
    assert records_from_json(json.dumps(again)) == recs
    assert json.loads(out)["records"] == [r.to_dict() for r in recs]


def test_help_lists_defaults(capsys):
    assert main(["shoot", "--help"]) == 0
    out = capsys.readouterr().out
    assert "default: 1e-08" in out and "default: 1e-05" in out
