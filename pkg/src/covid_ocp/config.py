"""Run configuration: loading, defaults and validation.

A config is an INI file with the sections ``[model]``, ``[initial]``,
``[weights]``, ``[sweep]`` and ``[run]``; a JSON object with the same
section/key layout is accepted too. Any key not given falls back to the
packaged ``defaults.ini``. Everything is validated before a solve starts and
problems surface as :class:`ConfigError` naming the offending ``section.key``.
"""
from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

from .errors import ConfigError, DomainError
from .model import ModelParams, StateVec
from .pmp import ObjectiveWeights, SweepConfig
from .strategies import SCENARIOS, by_scenario, get_strategy

FORMATS = ("csv", "json", "both")

_MODEL_KEYS = tuple(f.name for f in fields(ModelParams))
_SECTIONS = {
    "model": _MODEL_KEYS,
    "initial": ("N0", "S0", "E0", "I0", "A0", "R0", "B0"),
    "weights": tuple(f.name for f in fields(ObjectiveWeights)),
    "sweep": (
        "t_final", "n_steps", "relaxation", "tol", "max_iters", "adaptive", "min_relaxation",
        "u1_max", "u2_max", "u3_max", "u4_max",
    ),
    "run": ("strategies", "out", "format", "workers"),
}


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    init: StateVec
    weights: ObjectiveWeights
    sweep: SweepConfig
    strategies: tuple[int, ...]
    out_dir: Path
    format: str = "both"
    workers: int = 1

    @property
    def writes_csv(self) -> bool:
        return self.format in ("csv", "both")

    @property
    def writes_json(self) -> bool:
        return self.format in ("json", "both")


def default_config_text() -> str:
    return resources.files("covid_ocp").joinpath("data/defaults.ini").read_text(encoding="utf-8")


def _read_raw(path: Path | None) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep key case (A1 vs a1)
    parser.read_string(default_config_text(), source="defaults.ini")
    raw = {s: dict(parser[s]) for s in parser.sections()}
    if path is None:
        return raw

    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc

    if path.suffix.lower() == ".json":
        try:
            user = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
        if not isinstance(user, dict) or not all(isinstance(v, dict) for v in user.values()):
            raise ConfigError("JSON config must map section names to objects")
        user = {s: {k: v for k, v in body.items()} for s, body in user.items()}
    else:
        up = configparser.ConfigParser(interpolation=None)
        up.optionxform = str
        try:
            up.read_string(text, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse config: {exc}") from exc
        user = {s: dict(up[s]) for s in up.sections()}

    for section, body in user.items():
        if section not in _SECTIONS:
            raise ConfigError("unknown section", field=section)
        for key in body:
            if key not in _SECTIONS[section]:
                raise ConfigError("unknown key", field=f"{section}.{key}")
        raw.setdefault(section, {}).update(body)
    return raw


def _num(raw, section, key, kind=float):
    value = raw.get(section, {}).get(key)
    if value is None:
        raise ConfigError("missing value", field=f"{section}.{key}")
    try:
        if kind is int:
            number = float(value)
            if not number.is_integer():
                raise ValueError
            return int(number)
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"expected {'an integer' if kind is int else 'a number'}, got {value!r}",
                          field=f"{section}.{key}") from None


def _bool(raw, section, key):
    value = raw.get(section, {}).get(key)
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}", field=f"{section}.{key}")


def parse_strategies(selection) -> tuple[int, ...]:
    """Parse a selection such as ``all``, ``A``, ``B,C`` or ``1,6,14`` into strategy ids."""
    if isinstance(selection, (list, tuple)):
        tokens = [str(t) for t in selection]
    else:
        tokens = [t for t in str(selection).replace(" ", "").split(",") if t]
    if not tokens:
        raise ConfigError("empty strategy selection", field="run.strategies")
    ids: list[int] = []
    for token in tokens:
        if token.lower() == "all":
            ids.extend(range(1, 15))
        elif token.upper() in SCENARIOS:
            ids.extend(m.id for m in by_scenario(token))
        else:
            try:
                sid = int(token)
                get_strategy(sid)
            except (ValueError, KeyError):
                raise ConfigError(f"unknown strategy {token!r}", field="run.strategies") from None
            if sid == 0:
                raise ConfigError("strategy 0 is the baseline and is always run", field="run.strategies")
            ids.append(sid)
    return tuple(dict.fromkeys(ids))


def load_config(path=None, *, strategies=None, out_dir=None, fmt=None, workers=None) -> RunConfig:
    """Build a validated :class:`RunConfig`; keyword arguments override the file."""
    raw = _read_raw(path)

    model = {k: _num(raw, "model", k) for k in _MODEL_KEYS if k in raw.get("model", {})}
    n0 = _num(raw, "initial", "N0")
    if "Lambda" not in model:
        if "d" not in model:
            raise ConfigError("missing value", field="model.d")
        model["Lambda"] = model["d"] * n0
    missing = [k for k in _MODEL_KEYS if k not in model]
    if missing:
        raise ConfigError("missing value", field=f"model.{missing[0]}")
    try:
        params = ModelParams(**model)
    except DomainError as exc:
        raise ConfigError(str(exc), field="model") from None

    seeds = {k: _num(raw, "initial", k) for k in ("E0", "I0", "A0", "R0", "B0")}
    if raw["initial"].get("S0") not in (None, ""):
        s0 = _num(raw, "initial", "S0")
    else:
        s0 = n0 - seeds["E0"] - seeds["I0"] - seeds["A0"] - seeds["R0"]
    init = StateVec(s0, seeds["E0"], seeds["I0"], seeds["A0"], seeds["R0"], seeds["B0"])
    for name, value in zip(("S0", "E0", "I0", "A0", "R0", "B0"), init):
        if value < 0:
            raise ConfigError(f"initial value must be >= 0, got {value!r}", field=f"initial.{name}")
    if sum(init[:5]) <= 0:
        raise ConfigError("initial human population must be positive", field="initial.N0")

    weights = ObjectiveWeights(**{k: _num(raw, "weights", k) for k in _SECTIONS["weights"]})
    try:
        weights.validate()
    except DomainError as exc:
        raise ConfigError(str(exc), field="weights") from None

    try:
        sweep = SweepConfig(
            t_final=_num(raw, "sweep", "t_final"),
            n_steps=_num(raw, "sweep", "n_steps", int),
            relaxation=_num(raw, "sweep", "relaxation"),
            tol=_num(raw, "sweep", "tol"),
            max_iters=_num(raw, "sweep", "max_iters", int),
            adaptive=_bool(raw, "sweep", "adaptive"),
            min_relaxation=_num(raw, "sweep", "min_relaxation"),
            u_max=tuple(_num(raw, "sweep", f"u{i}_max") for i in range(1, 5)),
        )
    except DomainError as exc:
        raise ConfigError(str(exc), field="sweep") from None

    run = raw.get("run", {})
    selection = parse_strategies(strategies if strategies is not None else run.get("strategies", "all"))
    fmt = fmt if fmt is not None else run.get("format", "both")
    if fmt not in FORMATS:
        raise ConfigError(f"expected one of {', '.join(FORMATS)}, got {fmt!r}", field="run.format")
    workers = workers if workers is not None else _num(raw, "run", "workers", int)
    if workers < 1:
        raise ConfigError("must be >= 1", field="run.workers")

    return RunConfig(
        params=params,
        init=init,
        weights=weights,
        sweep=sweep,
        strategies=selection,
        out_dir=Path(out_dir if out_dir is not None else run.get("out", "results")),
        format=fmt,
        workers=int(workers),
    )
