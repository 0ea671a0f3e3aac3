"""Per-interval estimation loop: thermal model, aging, CMA, lifetime, convergence."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .aging import DEFAULT_AGING, AgingConstants, age_interval, to_percent
from .estimator import (
    CmaState,
    ConvergenceMonitor,
    LifetimeEstimate,
    cma_update,
    estimate_lifetime,
)
from .exceptions import UsageError
from .thermal import (
    CONTINUITY_MODE,
    MODES,
    PAPER_MODE,
    OperatingInterval,
    ThermalState,
    TransformerCharacteristics,
    simulate_interval,
    steady_state,
)

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 1000


@dataclass(frozen=True)
class RunRecord:
    hour_index: int
    hotspot_temp: float
    aging_factor: float
    interval_loss: float
    cma: float
    estimate_total_years: float
    converged: bool


@dataclass
class StreamingLifetimeRun:
    """
    Single-owner state of one transformer's estimation stream.

    Feed hottest-spot temperatures with :meth:`step_hotspot` (sensor route)
    or operating intervals with :meth:`step_interval` (scenario route). Each
    call returns the :class:`RunRecord` for that hour.
    """

    chars: TransformerCharacteristics = field(default_factory=TransformerCharacteristics)
    aging: AgingConstants = DEFAULT_AGING
    tolerance: float = 1e-5
    window: int = 24
    interval_hours: float = 1.0
    mode: str = PAPER_MODE
    cma_state: CmaState = field(default_factory=CmaState)
    monitor: Optional[ConvergenceMonitor] = None
    thermal_state: Optional[ThermalState] = None
    last_estimate: Optional[LifetimeEstimate] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise UsageError(f"unknown initialization mode {self.mode!r}; expected one of {MODES}")
        if not (self.interval_hours > 0):
            raise UsageError(f"interval_hours must be positive, got {self.interval_hours!r}")
        if self.monitor is None:
            self.monitor = ConvergenceMonitor(self.tolerance, self.window)

    @property
    def count(self) -> int:
        return self.cma_state.count

    @property
    def converged_at(self) -> Optional[int]:
        return self.monitor.converged_at

    def step_hotspot(self, hotspot_temp: float) -> RunRecord:
        aged = age_interval(hotspot_temp, self.interval_hours, self.chars.normal_insulation_life, self.aging)
        self.cma_state = cma_update(self.cma_state, aged.loss_of_life)
        estimate = estimate_lifetime(self.cma_state, self.interval_hours)
        self.monitor.update(estimate)
        self.last_estimate = estimate
        hour = self.cma_state.count - 1
        if self.cma_state.count % PROGRESS_EVERY == 0:
            logger.info(
                "interval %d: theta_h=%.2f C, cma=%.4e pu, estimate=%.3f y",
                self.cma_state.count, hotspot_temp, self.cma_state.cma, estimate.total_years,
            )
        return RunRecord(
            hour,
            hotspot_temp,
            aged.aging_factor,
            aged.loss_of_life,
            self.cma_state.cma,
            estimate.total_years,
            self.monitor.converged,
        )

    def step_interval(self, interval: OperatingInterval) -> RunRecord:
        if interval.duration != self.interval_hours:
            raise UsageError(
                f"interval duration {interval.duration} h differs from the run's {self.interval_hours} h"
            )
        prev = self.thermal_state
        if self.mode == CONTINUITY_MODE and prev is None:
            prev = steady_state(self.chars, interval.ambient_temp, interval.load_ratio_initial)
        self.thermal_state = simulate_interval(self.chars, interval, self.mode, prev)
        return self.step_hotspot(self.thermal_state.hotspot_temp)

    def run_hotspots(self, temps: Iterable[float], stop_at_convergence: bool = False) -> Iterator[RunRecord]:
        for temp in temps:
            record = self.step_hotspot(temp)
            yield record
            if stop_at_convergence and record.converged:
                return

    def run_intervals(
        self, intervals: Iterable[OperatingInterval], stop_at_convergence: bool = False
    ) -> Iterator[RunRecord]:
        for interval in intervals:
            record = self.step_interval(interval)
            yield record
            if stop_at_convergence and record.converged:
                return

    def snapshot(self) -> dict:
        """JSON-ready state; :meth:`from_snapshot` restores it exactly."""
        thermal = None
        if self.thermal_state is not None:
            thermal = {
                "topoil_rise": self.thermal_state.topoil_rise,
                "hotspot_rise": self.thermal_state.hotspot_rise,
                "hotspot_temp": self.thermal_state.hotspot_temp,
            }
        return {
            "count": self.cma_state.count,
            "cma_pu": self.cma_state.cma,
            "window": list(self.monitor.recent_estimates),
            "tolerance": self.monitor.tolerance,
            "window_len": self.monitor.window,
            "streak": self.monitor.streak,
            "converged_at": self.monitor.converged_at,
            "last_step": self.monitor.last_step,
            "interval_hours": self.interval_hours,
            "mode": self.mode,
            "thermal_state": thermal,
        }

    @classmethod
    def from_snapshot(
        cls,
        snap: dict,
        chars: Optional[TransformerCharacteristics] = None,
        aging: AgingConstants = DEFAULT_AGING,
    ) -> "StreamingLifetimeRun":
        try:
            monitor = ConvergenceMonitor(
                snap["tolerance"],
                snap["window_len"],
                snap["window"],
                snap.get("converged_at"),
                snap.get("last_step"),
                snap.get("streak", 0),
            )
            state = CmaState(snap["count"], snap["cma_pu"])
        except KeyError as exc:
            raise UsageError(f"snapshot is missing key {exc.args[0]!r}") from None
        thermal = snap.get("thermal_state")
        return cls(
            chars=chars or TransformerCharacteristics(),
            aging=aging,
            tolerance=monitor.tolerance,
            window=monitor.window,
            interval_hours=snap.get("interval_hours", 1.0),
            mode=snap.get("mode", PAPER_MODE),
            cma_state=state,
            monitor=monitor,
            thermal_state=ThermalState(**thermal) if thermal else None,
        )


def summarize(run: StreamingLifetimeRun) -> dict:
    """Final figures of a completed run, in the shape written to the JSON report."""
    estimate = run.last_estimate
    total_hours = run.count * run.interval_hours
    return {
        "samples_processed": run.count,
        "convergence_step": run.converged_at,
        "converged": run.converged_at is not None,
        "final_estimate_years": estimate.total_years if estimate else None,
        "final_remaining_years": estimate.remaining_years if estimate else None,
        "final_elapsed_years": estimate.elapsed_years if estimate else None,
        "final_cma_pu": run.cma_state.cma,
        "equivalent_aging_factor": (
            run.cma_state.cma * run.chars.normal_insulation_life / run.interval_hours
            if run.count
            else None
        ),
        "total_loss_of_life_pct": (
            to_percent(run.cma_state.cma * run.count) if run.count else None
        ),
        "total_hours": total_hours,
    }
