"""Strict JSON run configuration.

Schema (every section except ``game`` is optional)::

    {
      "game": {
        "c0": {"c_aa": 1.0, "c_bb": 1.0, "c_ab": 0.0},
        "c1": {"c_aa": 1.0, "c_bb": 1.0, "c_ab": 0.0},
        "r": [1.0, 1.0],
        "delta": 0.5
      },
      "grid": {
        "theta_g_min": 0.0, "theta_g_max": 0.0, "theta_g_step": 1.0,
        "theta_d_min": 0.0, "theta_d_max": 2.5, "theta_d_step": 0.005,
        "constrain_td_ge_tg": true
      },
      "deltas": [0.5]  or  {"start": 0.01, "stop": 0.98, "step": 0.01},
      "oracle": {"step": 0.005, "gamma_max": 2.0, "max_points": 4000000},
      "bargaining": {"criterion": "utilitarian", "deltas": <same forms as above>},
      "output": {"sweep": "sweep.csv", "pareto": "hull.csv", "heatmap": "map.svg", "report": "r.json"},
      "threads": 1,
      "seed": 0
    }

Numbers must be JSON numbers (no strings, booleans, NaN or Infinity).  Unknown
keys are rejected with their location.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .bargaining import CRITERIA, BargainSpec, default_deltas
from .game import CostMatrix, GameParams, validate
from .oracle import DEFAULT_MAX_POINTS
from .sweep import SweepGrid, axis_values


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class OracleSettings:
    step: float = 0.005
    gamma_max: float | None = None  # None: box sized from the game
    max_points: int = DEFAULT_MAX_POINTS


@dataclass(frozen=True)
class RunConfig:
    game: GameParams
    grid: SweepGrid = field(default_factory=SweepGrid.safety_line)
    deltas: tuple[float, ...] | None = None  # None: the game's own delta
    oracle: OracleSettings = field(default_factory=OracleSettings)
    bargaining: BargainSpec = field(default_factory=BargainSpec)
    output: dict = field(default_factory=dict)
    threads: int = 1
    seed: int = 0

    @property
    def sweep_deltas(self) -> list[float]:
        return list(self.deltas) if self.deltas is not None else [self.game.delta]


OUTPUT_KEYS = ("sweep", "pareto", "heatmap", "report")
GRID_KEYS = ("theta_g_min", "theta_g_max", "theta_g_step", "theta_d_min", "theta_d_max", "theta_d_step")


def _obj(v, loc: str, allowed: tuple[str, ...], required: tuple[str, ...] = ()) -> dict:
    if not isinstance(v, dict):
        raise ConfigError(f"{loc}: expected an object")
    for k in v:
        if k not in allowed:
            raise ConfigError(f"{loc}.{k}: unknown key")
    for k in required:
        if k not in v:
            raise ConfigError(f"{loc}.{k}: missing required key")
    return v


def _num(v, loc: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{loc}: expected a number, got {json.dumps(v)}")
    x = float(v)
    if not math.isfinite(x):
        raise ConfigError(f"{loc}: must be finite")
    return x


def _int(v, loc: str, lo: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{loc}: expected an integer, got {json.dumps(v)}")
    if lo is not None and v < lo:
        raise ConfigError(f"{loc}: must be >= {lo}")
    return v


def _matrix(v, loc: str) -> CostMatrix:
    d = _obj(v, loc, ("c_aa", "c_bb", "c_ab"), ("c_aa", "c_bb"))
    return CostMatrix(_num(d["c_aa"], f"{loc}.c_aa"), _num(d["c_bb"], f"{loc}.c_bb"),
                      _num(d.get("c_ab", 0.0), f"{loc}.c_ab"))


def _game(v, loc: str = "game") -> GameParams:
    d = _obj(v, loc, ("c0", "c1", "r", "delta"), ("c0", "c1", "r", "delta"))
    r = d["r"]
    if not (isinstance(r, list) and len(r) == 2):
        raise ConfigError(f"{loc}.r: expected [r_a, r_b]")
    params = GameParams(_matrix(d["c0"], f"{loc}.c0"), _matrix(d["c1"], f"{loc}.c1"),
                        _num(r[0], f"{loc}.r[0]"), _num(r[1], f"{loc}.r[1]"),
                        _num(d["delta"], f"{loc}.delta"))
    report = validate(params)
    if not report.ok:
        raise ConfigError(f"{loc}: " + "; ".join(report.violations))
    for c, name in ((params.c0, "c0"), (params.c1, "c1")):
        if c.c_aa <= 0 or c.c_bb <= 0:
            raise ConfigError(f"{loc}.{name}: diagonal entries must be positive")
    return params


def _grid(v, loc: str = "grid") -> SweepGrid:
    d = _obj(v, loc, GRID_KEYS + ("constrain_td_ge_tg",), GRID_KEYS)
    vals = {k: _num(d[k], f"{loc}.{k}") for k in GRID_KEYS}
    for k in ("theta_g_step", "theta_d_step"):
        if not vals[k] > 0:
            raise ConfigError(f"{loc}.{k}: must be positive")
    for k in ("theta_g_min", "theta_d_min"):
        if vals[k] < 0:
            raise ConfigError(f"{loc}.{k}: thresholds must be nonnegative")
    constrain = d.get("constrain_td_ge_tg", True)
    if not isinstance(constrain, bool):
        raise ConfigError(f"{loc}.constrain_td_ge_tg: expected true or false")
    return SweepGrid(**vals, constrain_td_ge_tg=constrain)


def _deltas(v, loc: str) -> tuple[float, ...]:
    if isinstance(v, list):
        vals = [_num(x, f"{loc}[{i}]") for i, x in enumerate(v)]
    else:
        d = _obj(v, loc, ("start", "stop", "step"), ("start", "stop", "step"))
        start, stop, step = (_num(d[k], f"{loc}.{k}") for k in ("start", "stop", "step"))
        if not step > 0:
            raise ConfigError(f"{loc}.step: must be positive")
        vals = axis_values(start, stop, step)
    if not vals:
        raise ConfigError(f"{loc}: no delta values")
    for i, x in enumerate(vals):
        if not 0.0 < x < 1.0:
            raise ConfigError(f"{loc}[{i}]: delta must lie in (0, 1)")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ConfigError(f"{loc}: values must be strictly increasing")
    return tuple(vals)


def _oracle(v, loc: str = "oracle") -> OracleSettings:
    d = _obj(v, loc, ("step", "gamma_max", "max_points"))
    step = _num(d.get("step", 0.005), f"{loc}.step")
    if not step > 0:
        raise ConfigError(f"{loc}.step: must be positive")
    gamma_max = None
    if "gamma_max" in d:
        gamma_max = _num(d["gamma_max"], f"{loc}.gamma_max")
        if gamma_max < step:
            raise ConfigError(f"{loc}.gamma_max: must be at least one step")
    max_points = _int(d.get("max_points", DEFAULT_MAX_POINTS), f"{loc}.max_points", 1)
    return OracleSettings(step, gamma_max, max_points)


def _bargaining(v, loc: str = "bargaining") -> BargainSpec:
    d = _obj(v, loc, ("criterion", "deltas"))
    criterion = d.get("criterion", "utilitarian")
    if criterion not in CRITERIA:
        raise ConfigError(f"{loc}.criterion: expected one of {', '.join(CRITERIA)}")
    deltas = _deltas(d["deltas"], f"{loc}.deltas") if "deltas" in d else tuple(default_deltas())
    return BargainSpec(criterion, deltas)


def _output(v, loc: str = "output") -> dict:
    d = _obj(v, loc, OUTPUT_KEYS)
    for k, p in d.items():
        if not isinstance(p, str) or not p:
            raise ConfigError(f"{loc}.{k}: expected a nonempty path string")
    return dict(d)


def _reject_constant(name: str):
    raise ConfigError(f"{name} is not a valid number")


def parse_config(doc: dict) -> RunConfig:
    d = _obj(doc, "config", ("game", "grid", "deltas", "oracle", "bargaining", "output", "threads", "seed"),
             ("game",))
    kw = {"game": _game(d["game"])}
    if "grid" in d:
        kw["grid"] = _grid(d["grid"])
    if "deltas" in d:
        kw["deltas"] = _deltas(d["deltas"], "deltas")
    if "oracle" in d:
        kw["oracle"] = _oracle(d["oracle"])
    if "bargaining" in d:
        kw["bargaining"] = _bargaining(d["bargaining"])
    if "output" in d:
        kw["output"] = _output(d["output"])
    if "threads" in d:
        kw["threads"] = _int(d["threads"], "threads", 1)
    if "seed" in d:
        kw["seed"] = _int(d["seed"], "seed", 0)
    return RunConfig(**kw)


def loads_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return parse_config(doc)


def load_config(path: str) -> RunConfig:
    """Read and validate a config file.  OSError propagates; bad content raises ConfigError."""
    with open(path, encoding="utf-8") as fh:
        return loads_config(fh.read())


def canonical_config() -> RunConfig:
    return RunConfig(GameParams.canonical())
