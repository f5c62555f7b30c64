import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from ep_atlas.cli import EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bands_json_and_csv_agree(capsys):
    argv = ["bands", "--model", "kitaev", "--grid", "k_x=-1:1:7"]
    code, text, _ = run(argv, capsys)
    assert code == EXIT_OK
    doc = json.loads(text)
    code, table, _ = run(argv + ["--format", "csv"], capsys)
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(table)))
    assert rows[0] == ["k_x", "re_1", "im_1", "re_2", "im_2"]
    data = np.array(rows[1:], dtype=float)
    eig = np.array(doc["eigenvalues"])
    assert np.array_equal(data[:, 0], np.array(doc["points"])[:, 0])
    assert np.array_equal(data[:, 1:], eig.reshape(len(eig), -1))


def test_bands_touch_at_kitaev_ep(capsys):
    _, text, _ = run(["bands", "--model", "kitaev", "--grid", "k_x=-1:1:3"], capsys)
    e = np.array(json.loads(text)["eigenvalues"])[1]
    assert abs(complex(*e[0]) - complex(*e[1])) < 1e-8


def test_hermitian_bands_are_real(tmp_path, capsys):
    cfg = tmp_path / "h.json"
    cfg.write_text(json.dumps({
        "hamiltonian": {"dimension": 2, "coefficients": ["cos(k_x)", "sin(k_x)", "0.3"]},
        "scan": {"grid": {"k_x": [-3, 3, 31]}},
    }))
    code, text, _ = run(["bands", "--config", str(cfg)], capsys)
    assert code == EXIT_OK
    eig = np.array(json.loads(text)["eigenvalues"])
    assert np.abs(eig[..., 1]).max() < 1e-14


def test_scan_fourfold_psh(capsys):
    code, text, _ = run(["scan", "--model", "fourfold_psh"], capsys)
    assert code == EXIT_OK
    doc = json.loads(text)
    ks = sorted(c["k_point"][0] for c in doc["candidates"] if c["is_ep"])
    assert len(ks) == 2 and abs(ks[0] + 0.2) < 1e-6 and abs(ks[1] - 0.2) < 1e-6


def test_empty_region_exits_zero(capsys):
    code, text, _ = run(["scan", "--model", "kitaev", "--grid", "k_x=1:2:21"], capsys)
    assert code == EXIT_OK and json.loads(text)["candidates"] == []


def test_malformed_config_exits_two(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"hamiltonian": {"model": "kitaev", "params": {"J": "oops("}}}))
    code, _, err = run(["scan", "--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG and "/hamiltonian/params/J" in err
    cfg.write_text("not json")
    code, _, err = run(["bands", "--config", str(cfg)], capsys)
    assert code == EXIT_CONFIG and "invalid JSON" in err
    code, _, _ = run(["scan", "--model", "kitaev", "--param", "J"], capsys)
    assert code == EXIT_CONFIG
    code, _, _ = run(["scan", "--model", "kitaev", "--format", "csv"], capsys)
    assert code == EXIT_CONFIG


def test_outputs_written_to_paths(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    out_csv = tmp_path / "bands.csv"
    out_c = tmp_path / "cons.json"
    cfg.write_text(json.dumps({
        "hamiltonian": {"model": "kitaev"},
        "scan": {"grid": {"k_x": [-1, 1, 5]}},
        "outputs": [
            {"kind": "bands", "path": str(out_csv), "format": "csv"},
            {"kind": "constraints", "path": str(out_c)},
        ],
    }))
    code, text, _ = run(["bands", "--config", str(cfg)], capsys)
    assert code == EXIT_OK and text == ""
    assert out_csv.read_text().startswith("k_x,")
    assert json.loads(out_c.read_text())["names"] == ["det"]


def test_classify_threefold(capsys):
    code, text, _ = run(["classify", "--model", "threefold_alpha", "--direction", "1,1"], capsys)
    assert code == EXIT_OK
    (item,) = json.loads(text)["classified"]
    assert item["class"]["label"] == "EP3-I"
    assert abs(item["scaling"]["leading"] - 0.5) < 0.05


def test_symcheck(capsys):
    code, text, _ = run(["symcheck", "--model", "kitaev"], capsys)
    assert code == EXIT_OK
    items = json.loads(text)["symmetries"]
    assert [i["kind"] for i in items] == ["TRSdag", "PHSdag", "CS"]
    assert all(i["relation_residual"] < 1e-13 and i["prediction_holds"] for i in items)


def test_tablecheck_sls3_passes(capsys):
    code, text, err = run(["tablecheck", "--n", "3", "--kind", "SLS"], capsys)
    assert code == EXIT_OK and json.loads(text)["passed"]
    assert "pattern n=3 SLS: pass" in err


def test_tablecheck_psh2_row(capsys):
    _, text, err = run(["tablecheck", "--n", "2", "--kind", "psH"], capsys)
    doc = json.loads(text)
    row = next(r for r in doc["rows"] if r["row"] == "psH[σx]")
    assert row["status"] == "pass" and row["count_observed"] == 3
    assert doc["patterns"][0]["status"] == "pass"


def test_tablecheck_psh_cs_row(capsys):
    _, text, _ = run(["tablecheck", "--n", "2", "--kind", "CS"], capsys)
    row = next(r for r in json.loads(text)["rows"] if r["row"] == "psH[σx] + CS[σz]")
    assert row["status"] == "pass" and row["count_observed"] == 2


def test_tablecheck_reports_mismatch(capsys):
    code, text, _ = run(["tablecheck", "--n", "2", "--kind", "I"], capsys)
    assert code == EXIT_MISMATCH and not json.loads(text)["passed"]


def test_tablecheck_skips_odd_chiral(capsys):
    _, text, _ = run(["tablecheck", "--n", "3", "--kind", "CS"], capsys)
    (p,) = json.loads(text)["patterns"]
    assert p["status"] == "skipped"


def test_module_entry_point(tmp_path):
    out = tmp_path / "a.json"
    proc = subprocess.run(
        [sys.executable, "-m", "ep_atlas.cli", "scan", "--model", "kitaev", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["command"] == "scan"
