"""
Insulation aging from hottest-spot temperature (Arrhenius form, IEEE C57.91).

Loss of life is kept per-unit (a fraction of the normal insulation life)
throughout; multiply by 100 only when displaying a percentage.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from .exceptions import DomainError, UsageError

KELVIN_OFFSET = 273.0
NORMAL_INSULATION_LIFE_HOURS = 180000.0


@dataclass(frozen=True)
class AgingConstants:
    """
    Constants of the per-unit life curve ``A * exp(B / (theta_H + 273))``.

    ``reference_temp`` (K) is where the aging acceleration factor is 1;
    383 K is 110 °C.
    """

    per_unit_constant: float = 9.8e-18
    aging_rate: float = 15000.0
    reference_temp: float = 383.0

    def __post_init__(self):
        if not (math.isfinite(self.per_unit_constant) and self.per_unit_constant > 0):
            raise DomainError(f"per_unit_constant must be positive, got {self.per_unit_constant!r}")
        if not (11350.0 <= self.aging_rate <= 18000.0):
            raise DomainError(f"aging_rate must lie in [11350, 18000] K, got {self.aging_rate!r}")
        if not (math.isfinite(self.reference_temp) and self.reference_temp > 0):
            raise DomainError(f"reference_temp must be a positive Kelvin value, got {self.reference_temp!r}")


DEFAULT_AGING = AgingConstants()


@dataclass(frozen=True)
class AgingRecord:
    hotspot_temp: float
    aging_factor: float
    duration: float
    loss_of_life: float


def _kelvin(hotspot_temp: float) -> float:
    kelvin = hotspot_temp + KELVIN_OFFSET
    if not (kelvin > 0):
        raise DomainError(f"hotspot temperature {hotspot_temp!r} °C is at or below absolute zero")
    return kelvin


def per_unit_life(hotspot_temp: float, constants: AgingConstants = DEFAULT_AGING) -> float:
    return constants.per_unit_constant * math.exp(constants.aging_rate / _kelvin(hotspot_temp))


def aging_acceleration_factor(hotspot_temp: float, constants: AgingConstants = DEFAULT_AGING) -> float:
    """
    Aging rate at ``hotspot_temp`` relative to the rate at the reference temperature.

    Exactly 1 at 110 °C with the default constants; above 1 when hotter.
    """
    b = constants.aging_rate
    return math.exp(b / constants.reference_temp - b / _kelvin(hotspot_temp))


def equivalent_aging_factor(records: Iterable[Tuple[float, float]]) -> float:
    """
    Duration-weighted mean of aging acceleration factors.

    Args:
        records: ``(aging_factor, duration_hours)`` pairs

    Returns:
        The equivalent aging factor over the whole period
    """
    weighted = []
    durations = []
    for factor, duration in records:
        if not (duration > 0):
            raise DomainError(f"durations must be positive, got {duration!r}")
        weighted.append(factor * duration)
        durations.append(duration)
    if not durations:
        raise UsageError("equivalent_aging_factor needs at least one record")
    return math.fsum(weighted) / math.fsum(durations)


def interval_loss_of_life(
    aging_factor: float, duration: float, normal_life: float = NORMAL_INSULATION_LIFE_HOURS
) -> float:
    """Per-unit loss of life for one interval (fraction of ``normal_life`` consumed)."""
    if not (normal_life > 0):
        raise DomainError(f"normal_life must be positive, got {normal_life!r}")
    if not (aging_factor > 0):
        raise DomainError(f"aging_factor must be positive, got {aging_factor!r}")
    if not (duration > 0):
        raise DomainError(f"duration must be positive, got {duration!r}")
    return aging_factor * duration / normal_life


def age_interval(
    hotspot_temp: float,
    duration: float = 1.0,
    normal_life: float = NORMAL_INSULATION_LIFE_HOURS,
    constants: AgingConstants = DEFAULT_AGING,
) -> AgingRecord:
    factor = aging_acceleration_factor(hotspot_temp, constants)
    return AgingRecord(hotspot_temp, factor, duration, interval_loss_of_life(factor, duration, normal_life))


def to_percent(per_unit: float) -> float:
    return per_unit * 100.0
