import configparser
import json

import pytest

from covid_ocp.config import default_config_text, load_config, parse_strategies
from covid_ocp.errors import ConfigError
from covid_ocp.model import ModelParams

TABLE_VALUES = {
    "beta1": 0.1233, "beta2": 0.0542, "beta3": 0.0020, "beta4": 0.1101, "delta": 0.1980, "tau": 0.3085,
    "d1": 0.0104, "gamma1": 0.3680, "gamma2": 0.2945, "psi1": 0.2574, "psi2": 0.2798, "psi3": 0.1584, "phi": 0.3820,
}


def write_ini(tmp_path, text, name="run.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_file_matches_parameter_table():
    parser = configparser.ConfigParser()
    parser.read_string(default_config_text())
    model = parser["model"]
    for key, value in TABLE_VALUES.items():
        assert float(model[key]) == value, key
    assert float(model["d"]) == pytest.approx(1 / (74.87 * 365), rel=1e-15)
    assert "Lambda" not in model


def test_default_config(default_config):
    c = default_config
    assert c.params == ModelParams.table_defaults()
    assert c.init.S == 34_813_871 - 1000 - 500 - 300
    assert (c.init.E, c.init.I, c.init.A, c.init.R, c.init.B) == (1000, 500, 300, 0, 1000)
    assert c.sweep.u_max == (0.5, 0.5, 0.75, 0.75)
    assert c.strategies == tuple(range(1, 15))
    assert c.weights.D == (50, 50, 100, 200)


def test_overrides_merge(tmp_path):
    path = write_ini(tmp_path, "[model]\nbeta1 = 0.2\n[initial]\nN0 = 1e6\n[sweep]\nn_steps = 300\n")
    c = load_config(path)
    assert c.params.beta1 == 0.2 and c.params.beta2 == 0.0542
    assert c.params.Lambda == pytest.approx(c.params.d * 1e6)
    assert c.sweep.n_steps == 300


def test_explicit_lambda_kept(tmp_path):
    c = load_config(write_ini(tmp_path, "[model]\nLambda = 42\n"))
    assert c.params.Lambda == 42


def test_json_config(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"sweep": {"n_steps": 400}, "run": {"strategies": "B"}}))
    c = load_config(path)
    assert c.sweep.n_steps == 400 and c.strategies == (5, 6, 7, 8, 9, 10)


@pytest.mark.parametrize("text,field", [
    ("[sweep]\nu1_max = 0.75\nu2_max = 0.75\n", "sweep"),
    ("[model]\nbeta1 = -1\n", "model"),
    ("[model]\nbeta9 = 1\n", "model.beta9"),
    ("[bogus]\nx = 1\n", "bogus"),
    ("[sweep]\nn_steps = 12.5\n", "sweep.n_steps"),
    ("[sweep]\nadaptive = maybe\n", "sweep.adaptive"),
    ("[weights]\nD2 = 0\n", "weights"),
    ("[initial]\nE0 = -5\n", "initial.E0"),
    ("[run]\nformat = xml\n", "run.format"),
    ("[run]\nworkers = 0\n", "run.workers"),
    ("[run]\nstrategies = 15\n", "run.strategies"),
])
def test_field_level_errors(tmp_path, text, field):
    with pytest.raises(ConfigError) as info:
        load_config(write_ini(tmp_path, text))
    assert info.value.field == field
    assert str(info.value).startswith(field)


def test_u1_u2_rule_message(tmp_path):
    with pytest.raises(ConfigError, match="u1_max \\+ u2_max"):
        load_config(write_ini(tmp_path, "[sweep]\nu1_max = 0.6\nu2_max = 0.6\n"))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.ini")


@pytest.mark.parametrize("selection,ids", [
    ("all", tuple(range(1, 15))), ("A", (1, 2, 3, 4)), ("c,d", (11, 12, 13, 14)),
    ("1,6,14", (1, 6, 14)), ("6,A", (6, 1, 2, 3, 4)), ([3, 3], (3,)),
])
def test_parse_strategies(selection, ids):
    assert parse_strategies(selection) == ids


@pytest.mark.parametrize("selection", ["0", "x", "", "1,,99"])
def test_parse_strategies_rejects(selection):
    with pytest.raises(ConfigError):
        parse_strategies(selection)
