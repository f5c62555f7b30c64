import json

import numpy as np
import pytest

from ep_atlas.config import ConfigError, load_config, parse_config, parse_value
from ep_atlas.symmetry import SymmetryKind


def _err(doc):
    with pytest.raises(ConfigError) as exc:
        parse_config(doc)
    return exc.value.pointer


def test_parse_value():
    assert parse_value(2) == 2
    assert parse_value([1, -2]) == 1 - 2j
    assert parse_value("sqrt(2)*i") == pytest.approx(1.4142135623730951j)
    with pytest.raises(ConfigError):
        parse_value("k_x")
    with pytest.raises(ConfigError):
        parse_value(True)


def test_model_source_uses_defaults():
    job = parse_config({"hamiltonian": {"model": "kitaev", "params": {"gamma_l": 1.0}}})
    assert job.field.params["gamma_l"] == 1.0 and job.field.params["J"] == 1.0
    assert [op.kind for op in job.symmetries] == [SymmetryKind.TRSdag, SymmetryKind.PHSdag, SymmetryKind.CS]
    assert job.scan.grid == ((-1.0, 1.0, 201),)


def test_model_fixed_momentum():
    job = parse_config({"hamiltonian": {"model": "fourfold_psh"}})
    assert job.fixed == {"k_z": 0.0} and len(job.scan.grid) == 1


def test_coefficient_source():
    doc = {
        "hamiltonian": {
            "dimension": 2,
            "momenta": ["k_x"],
            "params": {"g": 0.5},
            "coefficients": ["1 + cos(k_x)", "sin(k_x)", "i*g"],
        },
        "symmetries": [{"kind": "psH", "generator": [[0, 1], [1, 0]]}],
        "scan": {"grid": [[-1, 1, 11]], "rank_tol": 1e-9},
    }
    job = parse_config(doc)
    H = job.field(np.array([0.0]))
    assert np.allclose(H, [[0.5j, 2], [2, -0.5j]])
    assert job.scan.rank_tol == 1e-9


def test_entries_with_named_generator():
    doc = {
        "hamiltonian": {"momenta": [], "entries": [["0", "1"], ["0", "0"]]},
        "symmetries": [{"kind": "PHS", "generator": "iσy", "zeta": -1}],
    }
    job = parse_config(doc)
    assert job.scan is None
    assert job.symmetries[0].zeta == -1


@pytest.mark.parametrize(
    "doc,pointer",
    [
        ({}, "/hamiltonian"),
        ({"schema": 2, "hamiltonian": {}}, "/schema"),
        ({"hamiltonian": {"model": "kitaev", "entries": []}}, "/hamiltonian"),
        ({"hamiltonian": {"model": "nope"}}, "/hamiltonian/model"),
        ({"hamiltonian": {"model": "kitaev", "params": {"J": "k_x"}}}, "/hamiltonian/params/J"),
        ({"hamiltonian": {"model": "kitaev", "params": {"t": 1}}}, "/hamiltonian/params"),
        ({"hamiltonian": {"model": "kitaev"}, "scan": {"grid": {"k_x": [0, 1, 2.5]}}}, "/scan/grid/k_x"),
        ({"hamiltonian": {"model": "kitaev"}, "scan": {"grid": {"k_y": [0, 1, 5]}}}, "/scan/grid"),
        ({"hamiltonian": {"model": "kitaev"}, "scan": {"speed": 3}}, "/scan"),
        ({"hamiltonian": {"model": "kitaev"}, "symmetries": [{"kind": "XYZ"}]}, "/symmetries/0/kind"),
        ({"hamiltonian": {"model": "kitaev"}, "outputs": [{"kind": "ep_report", "format": "csv"}]}, "/outputs/0/format"),
        ({"hamiltonian": {"entries": [["k_x", "q"], ["0", "0"]]}}, "/hamiltonian/entries"),
        ({"hamiltonian": {"dimension": 5, "coefficients": []}}, "/hamiltonian/dimension"),
    ],
)
def test_error_pointers(doc, pointer):
    assert _err(doc) == pointer


def test_load_config(tmp_path):
    p = tmp_path / "job.json"
    p.write_text(json.dumps({"hamiltonian": {"model": "sls3_block"}}))
    assert load_config(str(p)).field.n == 3
    p.write_text("{")
    with pytest.raises(ConfigError):
        load_config(str(p))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
