"""
Winding hottest-spot temperature from ambient temperature and load ratios.

Implements the IEEE C57.91-2011 transient thermal model: top-oil rise over
ambient, winding hottest-spot rise over top oil, each following a first-order
exponential response between an initial and an ultimate value.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .exceptions import DomainError, UsageError

PAPER_MODE = "paper"
CONTINUITY_MODE = "continuity"
MODES = (PAPER_MODE, CONTINUITY_MODE)

AMBIENT_BOUNDS = (-60.0, 60.0)


@dataclass(frozen=True)
class TransformerCharacteristics:
    """
    Rated thermal constants of one transformer.

    Defaults are the 934 A distribution transformer used in the case
    studies. The winding time constant is not part of that data set; five
    minutes is a typical value and should be overridden when known.

    Attributes:
        rated_current: Rated current in A (informational only)
        loss_ratio: Load loss at rated load over no-load loss (R)
        oil_exponent: Top-oil exponent (n)
        winding_exponent: Winding exponent (m)
        rated_hotspot_rise: Hottest-spot rise over top oil at rated load, °C
        rated_topoil_rise: Top-oil rise over ambient at rated load, °C
        topoil_time_constant: Oil time constant in hours
        winding_time_constant: Winding time constant in hours
        normal_insulation_life: Normal insulation life in hours
    """

    rated_current: float = 934.0
    loss_ratio: float = 7.43
    oil_exponent: float = 0.8
    winding_exponent: float = 0.8
    rated_hotspot_rise: float = 17.6
    rated_topoil_rise: float = 53.9
    topoil_time_constant: float = 6.8
    winding_time_constant: float = 0.0833
    normal_insulation_life: float = 180000.0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        positive = (
            "loss_ratio",
            "rated_hotspot_rise",
            "rated_topoil_rise",
            "topoil_time_constant",
            "winding_time_constant",
            "normal_insulation_life",
        )
        for name in positive:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a finite positive number, got {value!r}")
        for name in ("oil_exponent", "winding_exponent"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.8 <= value <= 1.0):
                raise DomainError(f"{name} must lie in [0.8, 1.0], got {value!r}")
        if not (isinstance(self.rated_current, (int, float)) and self.rated_current > 0):
            raise DomainError(f"rated_current must be positive, got {self.rated_current!r}")


@dataclass(frozen=True)
class OperatingInterval:
    """One time step: ambient temperature (°C), initial/ultimate load ratio, duration (h)."""

    ambient_temp: float
    load_ratio_initial: float
    load_ratio_ultimate: float
    duration: float = 1.0

    def __post_init__(self):
        lo, hi = AMBIENT_BOUNDS
        if not (math.isfinite(self.ambient_temp) and lo <= self.ambient_temp <= hi):
            raise DomainError(f"ambient_temp {self.ambient_temp!r} outside [{lo}, {hi}] °C")
        for name in ("load_ratio_initial", "load_ratio_ultimate"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise DomainError(f"{name} must be >= 0, got {value!r}")
        if not (math.isfinite(self.duration) and self.duration > 0):
            raise DomainError(f"duration must be > 0, got {self.duration!r}")


@dataclass(frozen=True)
class ThermalState:
    """Rises over ambient/top oil and the resulting hottest-spot temperature, all °C."""

    topoil_rise: float
    hotspot_rise: float
    hotspot_temp: float


def _check_load(load_ratio: float) -> None:
    if not (math.isfinite(load_ratio) and load_ratio >= 0):
        raise DomainError(f"load_ratio must be >= 0, got {load_ratio!r}")


def topoil_rise_boundary(chars: TransformerCharacteristics, load_ratio: float) -> float:
    """
    Steady-state top-oil rise over ambient for a given load ratio.

    Used for both the initial (K_i) and the ultimate (K_U) value, the two
    having the same form.
    """
    _check_load(load_ratio)
    r = chars.loss_ratio
    if r <= 0:
        raise DomainError(f"loss_ratio must be positive, got {r!r}")
    return chars.rated_topoil_rise * ((load_ratio**2 * r + 1.0) / (r + 1.0)) ** chars.oil_exponent


def hotspot_rise_boundary(chars: TransformerCharacteristics, load_ratio: float) -> float:
    """Steady-state hottest-spot rise over top oil for a given load ratio."""
    _check_load(load_ratio)
    return chars.rated_hotspot_rise * load_ratio ** (2.0 * chars.winding_exponent)


def transient_rise(initial: float, ultimate: float, time_constant: float, elapsed: float) -> float:
    """
    First-order exponential approach from ``initial`` toward ``ultimate``.

    Args:
        initial: Rise at the start of the interval, °C
        ultimate: Rise the response settles to, °C
        time_constant: Time constant in hours
        elapsed: Time since the start of the interval in hours

    Returns:
        The rise after ``elapsed`` hours, °C
    """
    if not (time_constant > 0):
        raise DomainError(f"time_constant must be positive, got {time_constant!r}")
    if not (elapsed >= 0):
        raise DomainError(f"elapsed must be >= 0, got {elapsed!r}")
    return (ultimate - initial) * (1.0 - math.exp(-elapsed / time_constant)) + initial


def hotspot_temperature(ambient: float, topoil_rise: float, hotspot_rise: float) -> float:
    return ambient + topoil_rise + hotspot_rise


def simulate_interval(
    chars: TransformerCharacteristics,
    interval: OperatingInterval,
    mode: str = PAPER_MODE,
    prev: Optional[ThermalState] = None,
) -> ThermalState:
    """
    Thermal state at the end of one operating interval.

    In paper mode the initial rises are re-derived from the interval's own
    initial load ratio and ``prev`` is ignored. In continuity mode they are
    the final rises of ``prev``, which is then required; see
    :func:`steady_state` for seeding the first interval.
    """
    if mode not in MODES:
        raise UsageError(f"unknown initialization mode {mode!r}; expected one of {MODES}")
    if mode == CONTINUITY_MODE and prev is None:
        raise UsageError("continuity mode needs the previous interval's ThermalState")

    if mode == CONTINUITY_MODE:
        topoil_initial = prev.topoil_rise
        hotspot_initial = prev.hotspot_rise
    else:
        topoil_initial = topoil_rise_boundary(chars, interval.load_ratio_initial)
        hotspot_initial = hotspot_rise_boundary(chars, interval.load_ratio_initial)

    topoil_ultimate = topoil_rise_boundary(chars, interval.load_ratio_ultimate)
    hotspot_ultimate = hotspot_rise_boundary(chars, interval.load_ratio_ultimate)

    topoil = transient_rise(topoil_initial, topoil_ultimate, chars.topoil_time_constant, interval.duration)
    hotspot = transient_rise(hotspot_initial, hotspot_ultimate, chars.winding_time_constant, interval.duration)
    return ThermalState(topoil, hotspot, hotspot_temperature(interval.ambient_temp, topoil, hotspot))


def steady_state(chars: TransformerCharacteristics, ambient: float, load_ratio: float) -> ThermalState:
    """Settled thermal state under constant load."""
    topoil = topoil_rise_boundary(chars, load_ratio)
    hotspot = hotspot_rise_boundary(chars, load_ratio)
    return ThermalState(topoil, hotspot, hotspot_temperature(ambient, topoil, hotspot))


def simulate(
    chars: TransformerCharacteristics,
    intervals: Iterable[OperatingInterval],
    mode: str = PAPER_MODE,
    prev: Optional[ThermalState] = None,
) -> Iterator[ThermalState]:
    """
    Run :func:`simulate_interval` over a sequence.

    In continuity mode without ``prev``, the first interval starts from the
    steady state at its initial load ratio.
    """
    state = prev
    for interval in intervals:
        if mode == CONTINUITY_MODE and state is None:
            state = steady_state(chars, interval.ambient_temp, interval.load_ratio_initial)
        state = simulate_interval(chars, interval, mode, state)
        yield state
