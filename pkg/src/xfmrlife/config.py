"""
Run configuration: JSON file plus command-line overrides.

Example config (every key optional; unknown keys are rejected)::

    {
      "transformer": {"loss_ratio": 7.43, "winding_time_constant": 0.0833},
      "aging": {"aging_rate": 15000},
      "estimator": {"tolerance": 1e-5, "window": 24, "interval_hours": 1.0},
      "mode": "paper",
      "horizon_hours": 8760,
      "seed": 42,
      "scenario": {
        "mild": {"annual_mean": 12.0},
        "warm": {"annual_mean": 24.0},
        "load": {"base_ratio": 0.7},
        "overload": {"magnitude": 1.2, "hours_per_day": 3, "days": 20}
      }
    }
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .aging import AgingConstants
from .exceptions import XfmrLifeError
from .scenarios import ClimateSpec, LoadSpec, OverloadSpec, HOURS_PER_YEAR
from .thermal import MODES, PAPER_MODE, TransformerCharacteristics


class ConfigError(XfmrLifeError, ValueError):
    pass


@dataclass
class EstimatorConfig:
    tolerance: float = 1e-5
    window: int = 24
    interval_hours: float = 1.0


@dataclass
class ScenarioConfig:
    """Per-case overrides; seeds inside these sections beat the derived sub-seeds."""

    mild: Dict[str, Any] = field(default_factory=dict)
    warm: Dict[str, Any] = field(default_factory=dict)
    load: Dict[str, Any] = field(default_factory=dict)
    overload: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RunConfig:
    transformer: TransformerCharacteristics = field(default_factory=TransformerCharacteristics)
    aging: AgingConstants = field(default_factory=AgingConstants)
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
    mode: str = PAPER_MODE
    horizon_hours: int = HOURS_PER_YEAR
    seed: int = 42
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)

    def climate_spec(self, case: int) -> ClimateSpec:
        base = ClimateSpec.mild(self.seed) if case == 1 else ClimateSpec.warm(self.seed)
        overrides = self.scenario.mild if case == 1 else self.scenario.warm
        return _build(ClimateSpec, {**dataclasses.asdict(base), **overrides}, f"scenario.{base.climate_class}")

    def load_spec(self) -> LoadSpec:
        return _build(LoadSpec, {"seed": (self.seed + 1) % 2**64, **self.scenario.load}, "scenario.load")

    def overload_spec(self) -> OverloadSpec:
        return _build(OverloadSpec, {"seed": (self.seed + 2) % 2**64, **self.scenario.overload}, "scenario.overload")

    def echo(self) -> Dict[str, Any]:
        """Plain-dict copy of every setting, for embedding in reports."""
        return dataclasses.asdict(self)


def _check_keys(cls, data: Dict[str, Any], where: str) -> None:
    if not isinstance(data, dict):
        raise ConfigError(f"{where or '<root>'}: expected an object, got {type(data).__name__}")
    allowed = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in allowed:
            path = f"{where}.{key}" if where else key
            raise ConfigError(f"{path}: unknown key (allowed: {', '.join(sorted(allowed))})")


def _build(cls, data: Dict[str, Any], where: str):
    _check_keys(cls, data, where)
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def config_from_dict(data: Optional[Dict[str, Any]]) -> RunConfig:
    data = dict(data or {})
    _check_keys(RunConfig, data, "")
    kwargs: Dict[str, Any] = {}
    if "transformer" in data:
        kwargs["transformer"] = _build(TransformerCharacteristics, data["transformer"], "transformer")
    if "aging" in data:
        kwargs["aging"] = _build(AgingConstants, data["aging"], "aging")
    if "estimator" in data:
        kwargs["estimator"] = _build(EstimatorConfig, data["estimator"], "estimator")
    if "scenario" in data:
        section = data["scenario"]
        _check_keys(ScenarioConfig, section, "scenario")
        for name, spec_cls in (("mild", ClimateSpec), ("warm", ClimateSpec), ("load", LoadSpec), ("overload", OverloadSpec)):
            _check_keys(spec_cls, section.get(name, {}), f"scenario.{name}")
        kwargs["scenario"] = ScenarioConfig(**section)
    for key in ("mode", "horizon_hours", "seed"):
        if key in data:
            kwargs[key] = data[key]
    config = RunConfig(**kwargs)
    validate(config)
    return config


def apply_overrides(config: RunConfig, **flags) -> RunConfig:
    """Return ``config`` with every non-None flag applied; flags always win."""
    estimator = config.estimator
    for key in ("tolerance", "window", "interval_hours"):
        if flags.get(key) is not None:
            estimator = dataclasses.replace(estimator, **{key: flags[key]})
    changes: Dict[str, Any] = {"estimator": estimator}
    for key in ("mode", "seed", "horizon_hours"):
        if flags.get(key) is not None:
            changes[key] = flags[key]
    config = dataclasses.replace(config, **changes)
    validate(config)
    return config


def validate(config: RunConfig) -> None:
    if config.mode not in MODES:
        raise ConfigError(f"mode: expected one of {MODES}, got {config.mode!r}")
    if not isinstance(config.seed, int) or isinstance(config.seed, bool) or not 0 <= config.seed < 2**64:
        raise ConfigError(f"seed: expected an unsigned 64-bit integer, got {config.seed!r}")
    if not isinstance(config.horizon_hours, int) or config.horizon_hours < 1:
        raise ConfigError(f"horizon_hours: expected a positive integer, got {config.horizon_hours!r}")
    est = config.estimator
    if not (isinstance(est.tolerance, (int, float)) and est.tolerance > 0):
        raise ConfigError(f"estimator.tolerance: must be positive, got {est.tolerance!r}")
    if not isinstance(est.window, int) or est.window < 1:
        raise ConfigError(f"estimator.window: must be an integer >= 1, got {est.window!r}")
    if not (isinstance(est.interval_hours, (int, float)) and est.interval_hours > 0):
        raise ConfigError(f"estimator.interval_hours: must be positive, got {est.interval_hours!r}")
