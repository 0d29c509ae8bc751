"""Flat key = value configuration files for the command-line tools.

Grammar: one `key = value` per line, `#` starts a comment, blank lines are
ignored. Unknown and duplicate keys are errors, as is a file with no
assignments at all. Values are numbers except spin_direction (ccw|cw) and
out_dir (path). Missing keys fall back to the bundled defaults, which mirror
configs/reference.cfg.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields
from typing import Dict, Iterable, Optional, Tuple

from .errors import ConfigParseError, ConfigValidationError, MissingConfigFile
from .model import RobotModel
from .terrain import StairProfile
from .wave import GaitParams

_FLOAT_KEYS = (
    "p_x",
    "p_y",
    "r_x",
    "r_y",
    "r_z",
    "body_height",
    "beta",
    "cycle_time",
    "stroke",
    "delta_h",
    "stair_width",
    "stair_height",
    "t_0",
    "dt",
    "spin_target_deg",
)
_INT_KEYS = ("stair_count", "level_cycles")
_STR_KEYS = ("spin_direction", "out_dir")
KNOWN_KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS


@dataclass(frozen=True)
class Config:
    """Validated run configuration (model, gait, stairs, scenario, output)."""

    p_x: float = 0.8
    p_y: float = 0.54
    r_x: float = 0.76
    r_y: float = 0.5
    r_z: float = 0.5
    body_height: float = 0.5
    beta: float = 0.75
    cycle_time: float = 8.0
    stroke: Optional[float] = None
    delta_h: float = 0.02
    stair_width: float = 0.5
    stair_height: float = 0.13
    stair_count: int = 8
    t_0: float = 0.0
    dt: float = 0.001
    level_cycles: int = 2
    spin_target_deg: float = 90.0
    spin_direction: str = "ccw"
    out_dir: str = "out"

    def model(self) -> RobotModel:
        return RobotModel(
            p_x=self.p_x,
            p_y=self.p_y,
            r_x=self.r_x,
            r_y=self.r_y,
            r_z=self.r_z,
            body_height=self.body_height,
        )

    def params(self) -> GaitParams:
        return GaitParams(
            beta=self.beta,
            cycle_time=self.cycle_time,
            stroke=self.stroke,
            delta_h=self.delta_h,
            stair_width=self.stair_width,
            stair_height=self.stair_height,
            t_0=self.t_0,
        )

    def stairs(self, ascending: bool = True, start: float = 0.0) -> StairProfile:
        return StairProfile(
            start=start,
            count=self.stair_count,
            width=self.stair_width,
            height=self.stair_height,
            ascending=ascending,
        )


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    """Raw key -> value strings from config text; grammar errors only."""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigParseError(f"{source}:{lineno}: expected 'key = value'")
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"{source}:{lineno}: unknown key '{key}'")
        if key in values:
            raise ConfigParseError(f"{source}:{lineno}: duplicate key '{key}'")
        values[key] = value
    if not values:
        raise ConfigParseError(f"{source}: no assignments found")
    return values


def parse_overrides(pairs: Iterable[str]) -> Dict[str, str]:
    """key=value strings from --set flags; later settings win."""
    values: Dict[str, str] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigParseError(f"--set '{pair}': expected key=value")
        key, _, value = pair.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigParseError(f"--set '{pair}': expected key=value")
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"--set: unknown key '{key}'")
        values[key] = value
    return values


def _convert(key: str, value: str):
    if key in _STR_KEYS:
        return value
    if key in _INT_KEYS:
        try:
            return int(value, 10)
        except ValueError:
            raise ConfigParseError(f"key '{key}': expected an integer, got '{value}'")
    try:
        out = float(value)
    except ValueError:
        raise ConfigParseError(f"key '{key}': expected a number, got '{value}'")
    if not math.isfinite(out):
        raise ConfigParseError(f"key '{key}': expected a finite number")
    return out


def _fail(key: str, message: str) -> None:
    raise ConfigValidationError(f"key '{key}': {message}")


def _validate(cfg: Config) -> None:
    for key in ("p_x", "p_y", "r_x", "r_y", "r_z", "body_height"):
        if getattr(cfg, key) <= 0.0:
            _fail(key, "must be positive")
    if cfg.r_x >= cfg.p_x:
        _fail("r_x", "must be smaller than p_x")
    if cfg.r_y >= cfg.p_y:
        _fail("r_y", "must be smaller than p_y")
    if not (0.75 <= cfg.beta < 1.0):
        _fail("beta", "must lie in [3/4, 1)")
    if cfg.cycle_time <= 0.0:
        _fail("cycle_time", "must be positive")
    if cfg.stroke is not None and cfg.stroke <= 0.0:
        _fail("stroke", "must be positive when set")
    if cfg.delta_h <= 0.0:
        _fail("delta_h", "must be positive")
    if cfg.stair_width <= 0.0:
        _fail("stair_width", "must be positive")
    if cfg.stair_height <= 0.0:
        _fail("stair_height", "must be positive")
    if cfg.stair_count < 1:
        _fail("stair_count", "must be at least 1")
    if cfg.t_0 < 0.0:
        _fail("t_0", "must be nonnegative")
    if cfg.dt <= 0.0:
        _fail("dt", "must be positive")
    if cfg.level_cycles < 1:
        _fail("level_cycles", "must be at least 1")
    if cfg.spin_target_deg <= 0.0:
        _fail("spin_target_deg", "must be positive")
    if cfg.spin_direction not in ("ccw", "cw"):
        _fail("spin_direction", "must be 'ccw' or 'cw'")
    if not cfg.out_dir:
        _fail("out_dir", "must be nonempty")


def make_config(raw: Dict[str, str]) -> Config:
    """Defaults overlaid with the given raw values, converted and validated."""
    kwargs = {}
    for key, value in raw.items():
        kwargs[key] = _convert(key, value)
    cfg = Config(**kwargs)
    _validate(cfg)
    return cfg


def load_config(
    path: Optional[str], overrides: Iterable[str] = ()
) -> Config:
    """Config from an optional file plus --set overrides."""
    raw: Dict[str, str] = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MissingConfigFile(f"cannot read config '{path}': {exc}")
        raw.update(parse_config_text(text, source=os.fspath(path)))
    raw.update(parse_overrides(overrides))
    return make_config(raw)


def config_fields() -> Tuple[str, ...]:
    return tuple(f.name for f in fields(Config))
