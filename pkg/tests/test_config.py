import copy
import json
from pathlib import Path

import pytest

from safetyreg.config import ConfigError, load_config, loads_config, parse_config

ROOT = Path(__file__).resolve().parents[1]

BASE = {
    "game": {
        "c0": {"c_aa": 1.0, "c_bb": 1.0, "c_ab": 0.0},
        "c1": {"c_aa": 1.0, "c_bb": 1.0},
        "r": [1.0, 1.0],
        "delta": 0.5,
    }
}


def _with(path, value):
    doc = copy.deepcopy(BASE)
    node = doc
    for k in path[:-1]:
        node = node.setdefault(k, {})
    node[path[-1]] = value
    return doc


def test_minimal_config_defaults():
    cfg = parse_config(BASE)
    assert cfg.game.c1.c_ab == 0.0 and cfg.threads == 1 and cfg.seed == 0
    assert cfg.sweep_deltas == [0.5]
    assert len(cfg.bargaining.delta_values) == 98


def test_shipped_configs_load():
    for name in ("canonical.json", "bargaining.json"):
        cfg = load_config(str(ROOT / "configs" / name))
        assert cfg.game.delta == 0.5
    cfg = load_config(str(ROOT / "configs" / "bargaining.json"))
    assert len(cfg.sweep_deltas) == 98 and cfg.sweep_deltas[49] == 0.5


@pytest.mark.parametrize("path, value, where", [
    (("game", "c0", "c_xy"), 0.0, "game.c0.c_xy"),
    (("extra",), 1, "config.extra"),
    (("grid", "theta_g_min"), 0.0, "grid.theta_g_max"),
    (("oracle", "stepp"), 0.1, "oracle.stepp"),
])
def test_unknown_or_missing_keys_located(path, value, where):
    with pytest.raises(ConfigError, match=where.replace(".", r"\.")):
        parse_config(_with(path, value))


@pytest.mark.parametrize("value", ["0.5", True, None, [0.5]])
def test_numbers_must_be_numbers(value):
    with pytest.raises(ConfigError, match="game.delta"):
        parse_config(_with(("game", "delta"), value))


def test_nan_and_infinity_rejected():
    text = json.dumps(BASE).replace('"delta": 0.5', '"delta": NaN')
    with pytest.raises(ConfigError):
        loads_config(text)
    text = json.dumps(BASE).replace('"delta": 0.5', '"delta": Infinity')
    with pytest.raises(ConfigError):
        loads_config(text)


def test_malformed_json():
    with pytest.raises(ConfigError, match="invalid JSON"):
        loads_config("{")


def test_invalid_game_rejected():
    with pytest.raises(ConfigError, match="game"):
        parse_config(_with(("game", "c0", "c_ab"), -1.0))
    with pytest.raises(ConfigError, match="game"):
        parse_config(_with(("game", "delta"), 1.3))


def test_delta_forms():
    cfg = parse_config(_with(("deltas",), {"start": 0.1, "stop": 0.3, "step": 0.1}))
    assert cfg.sweep_deltas == [0.1, 0.2, 0.3]
    with pytest.raises(ConfigError, match=r"deltas\[1\]"):
        parse_config(_with(("deltas",), [0.1, 1.0]))
    with pytest.raises(ConfigError, match="increasing"):
        parse_config(_with(("deltas",), [0.3, 0.1]))


def test_threads_and_seed_are_integers():
    with pytest.raises(ConfigError, match="threads"):
        parse_config(_with(("threads",), 1.5))
    with pytest.raises(ConfigError, match="threads"):
        parse_config(_with(("threads",), 0))
    assert parse_config(_with(("seed",), 7)).seed == 7


def test_bargaining_criterion():
    cfg = parse_config(_with(("bargaining",), {"criterion": "nash"}))
    assert cfg.bargaining.criterion == "nash"
    with pytest.raises(ConfigError, match="criterion"):
        parse_config(_with(("bargaining",), {"criterion": "median"}))


def test_missing_file_is_os_error(tmp_path):
    with pytest.raises(OSError):
        load_config(str(tmp_path / "nope.json"))
