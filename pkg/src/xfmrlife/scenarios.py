"""
Seeded synthesis of hourly ambient temperature, load ratio and overload scenarios.

Every generator draws from ``numpy.random.Generator(numpy.random.PCG64(seed))``
and nothing else, so an identical spec and seed reproduce an identical
series on any platform running the same NumPy major version.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .exceptions import DomainError, UsageError

HOURS_PER_DAY = 24
HOURS_PER_YEAR = 8760
LOAD_REFERENCE_TEMP = 20.0

# Annual minimum in mid-January, daily maximum at 15:00.
COLDEST_HOUR_OF_YEAR = 15 * HOURS_PER_DAY
WARMEST_HOUR_OF_DAY = 15
OVERLOAD_START_HOUR = 14

CASE_LABELS = {1: "mild", 2: "warm", 3: "warm+overload"}


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _check_seed(seed) -> None:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool) or not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


@dataclass(frozen=True)
class ClimateSpec:
    """
    Hourly ambient temperature model.

    ``annual_swing`` and ``diurnal_swing`` are sinusoid amplitudes (half the
    peak-to-peak range), in °C.
    """

    climate_class: str = "mild"
    annual_mean: float = 12.0
    annual_swing: float = 10.0
    diurnal_swing: float = 6.0
    noise_std: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if self.climate_class not in ("mild", "warm"):
            raise DomainError(f"climate_class must be 'mild' or 'warm', got {self.climate_class!r}")
        for name in ("annual_swing", "diurnal_swing", "noise_std"):
            if not (getattr(self, name) >= 0):
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)!r}")
        _check_seed(self.seed)

    @classmethod
    def mild(cls, seed: int = 0) -> "ClimateSpec":
        return cls("mild", 12.0, 10.0, 6.0, 2.0, seed)

    @classmethod
    def warm(cls, seed: int = 0) -> "ClimateSpec":
        return cls("warm", 24.0, 10.0, 8.0, 2.0, seed)


@dataclass(frozen=True)
class LoadSpec:
    base_ratio: float = 0.7
    temp_sensitivity: float = 0.015
    noise_std: float = 0.05
    seed: int = 1

    def __post_init__(self):
        if not (self.base_ratio >= 0):
            raise DomainError(f"base_ratio must be >= 0, got {self.base_ratio!r}")
        if not (self.noise_std >= 0):
            raise DomainError(f"noise_std must be >= 0, got {self.noise_std!r}")
        _check_seed(self.seed)


@dataclass(frozen=True)
class OverloadSpec:
    """``magnitude`` multiplies the ultimate load ratio on ``hours_per_day`` afternoon hours of ``days`` days."""

    magnitude: float = 1.2
    hours_per_day: int = 3
    days: int = 20
    seed: int = 2
    start_hour: int = OVERLOAD_START_HOUR

    def __post_init__(self):
        if not (self.magnitude >= 1.0):
            raise DomainError(f"magnitude must be >= 1, got {self.magnitude!r}")
        if not (0 <= self.start_hour and self.hours_per_day >= 1 and self.start_hour + self.hours_per_day <= HOURS_PER_DAY):
            raise DomainError(
                f"overload block {self.start_hour}+{self.hours_per_day} h does not fit in one day"
            )
        if self.days < 1:
            raise DomainError(f"days must be >= 1, got {self.days!r}")
        _check_seed(self.seed)


def synth_ambient(spec: ClimateSpec, horizon_hours: int = HOURS_PER_YEAR) -> np.ndarray:
    """Annual sinusoid + diurnal sinusoid + Gaussian noise, one value per hour."""
    if horizon_hours < 1:
        raise UsageError(f"horizon_hours must be >= 1, got {horizon_hours}")
    hours = np.arange(horizon_hours, dtype=np.float64)
    annual = -spec.annual_swing * np.cos(2 * np.pi * (hours - COLDEST_HOUR_OF_YEAR) / HOURS_PER_YEAR)
    diurnal = spec.diurnal_swing * np.cos(2 * np.pi * (hours % HOURS_PER_DAY - WARMEST_HOUR_OF_DAY) / HOURS_PER_DAY)
    noise = spec.noise_std * _rng(spec.seed).standard_normal(horizon_hours)
    return spec.annual_mean + annual + diurnal + noise


def ratios_from_ultimate(k_u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Initial ratio of each hour is the previous hour's ultimate ratio."""
    k_u = np.asarray(k_u, dtype=np.float64)
    k_i = np.empty_like(k_u)
    k_i[0] = k_u[0]
    k_i[1:] = k_u[:-1]
    return k_i, k_u


def synth_load(ambient, spec: LoadSpec) -> Tuple[np.ndarray, np.ndarray]:
    """
    Load ratios that rise with ambient temperature.

    Returns:
        ``(k_i, k_u)`` arrays, each the length of ``ambient``
    """
    ambient = np.asarray(ambient, dtype=np.float64)
    if ambient.ndim != 1 or ambient.size == 0:
        raise UsageError("ambient must be a nonempty 1-D series")
    noise = spec.noise_std * _rng(spec.seed).standard_normal(ambient.size)
    k_u = spec.base_ratio + spec.temp_sensitivity * (ambient - LOAD_REFERENCE_TEMP) + noise
    return ratios_from_ultimate(np.clip(k_u, 0.0, None))


def select_overload_hours(horizon_hours: int, spec: OverloadSpec) -> np.ndarray:
    """Sorted hour indices flagged for overload: one contiguous block on each selected day."""
    n_days = (horizon_hours - spec.start_hour - spec.hours_per_day) // HOURS_PER_DAY + 1
    if n_days < spec.days:
        raise UsageError(
            f"horizon of {horizon_hours} h holds {max(n_days, 0)} usable days, {spec.days} requested"
        )
    days = np.sort(_rng(spec.seed).choice(n_days, size=spec.days, replace=False))
    block = np.arange(spec.start_hour, spec.start_hour + spec.hours_per_day)
    return (days[:, None] * HOURS_PER_DAY + block[None, :]).ravel()


def apply_overload(load, spec: OverloadSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Scale the ultimate load ratio on the selected hours.

    Args:
        load: ``(k_i, k_u)`` pair, or a bare ``k_u`` array
        spec: overload magnitude, block length, number of days, seed

    Returns:
        ``(k_i, k_u, hours)`` where ``k_i`` is re-derived from the new
        ``k_u`` and ``hours`` are the modified hour indices
    """
    if isinstance(load, tuple):
        k_u = np.asarray(load[1], dtype=np.float64)
    else:
        k_u = np.asarray(load, dtype=np.float64)
    hours = select_overload_hours(k_u.size, spec)
    k_u = k_u.copy()
    k_u[hours] = k_u[hours] * spec.magnitude
    k_i, k_u = ratios_from_ultimate(k_u)
    return k_i, k_u, hours


@dataclass(frozen=True)
class Scenario:
    """Hourly scenario: ambient (°C) and load ratios, plus the overloaded hours if any."""

    ambient: np.ndarray
    k_i: np.ndarray
    k_u: np.ndarray
    label: str
    overload_hours: Optional[np.ndarray] = None

    def __len__(self):
        return self.ambient.size


def build_case(
    case: int,
    seed: int = 42,
    horizon_hours: int = HOURS_PER_YEAR,
    climate: Optional[ClimateSpec] = None,
    load: Optional[LoadSpec] = None,
    overload: Optional[OverloadSpec] = None,
) -> Scenario:
    """
    Synthesize one of the three case studies.

    Case 1 is the mild climate, case 2 the warm climate, case 3 the warm
    climate with afternoon overloads. Sub-seeds are ``seed``, ``seed + 1``
    and ``seed + 2`` for ambient, load and overload unless explicit specs
    are given, so cases 2 and 3 share everything but the overload.
    """
    if case not in CASE_LABELS:
        raise UsageError(f"case must be 1, 2 or 3, got {case!r}")
    _check_seed(seed)
    if climate is None:
        climate = ClimateSpec.mild(seed) if case == 1 else ClimateSpec.warm(seed)
    if load is None:
        load = LoadSpec(seed=(seed + 1) % 2**64)
    ambient = synth_ambient(climate, horizon_hours)
    k_i, k_u = synth_load(ambient, load)
    hours = None
    if case == 3:
        if overload is None:
            overload = OverloadSpec(seed=(seed + 2) % 2**64)
        k_i, k_u, hours = apply_overload((k_i, k_u), overload)
    return Scenario(ambient, k_i, k_u, CASE_LABELS[case], hours)
