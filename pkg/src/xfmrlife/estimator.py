"""
Streaming lifetime estimation over the per-interval loss-of-life stream.

A cumulative moving average (CMA) of per-unit loss of life is updated
recursively, turned into a lifetime estimate in years after every interval,
and fed to a convergence monitor.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Iterable, Optional

from .exceptions import DomainError, NoAgingError, UsageError

HOURS_PER_YEAR = 8760.0


@dataclass(frozen=True)
class CmaState:
    """Count of values seen and their running mean (``None`` before the first)."""

    count: int = 0
    cma: Optional[float] = None

    def __post_init__(self):
        if self.count < 0:
            raise DomainError(f"count must be >= 0, got {self.count}")
        if (self.count == 0) != (self.cma is None):
            raise DomainError("cma must be unset exactly when count is 0")
        if self.cma is not None and not (self.cma >= 0):
            raise DomainError(f"cma must be >= 0, got {self.cma!r}")


def cma_update(state: CmaState, new_loss: float) -> CmaState:
    if not (new_loss >= 0 and math.isfinite(new_loss)):
        raise DomainError(f"loss of life must be finite and >= 0, got {new_loss!r}")
    n = state.count
    if n == 0:
        return CmaState(1, float(new_loss))
    return CmaState(n + 1, (new_loss + n * state.cma) / (n + 1))


def cma_batch(losses: Iterable[float]) -> float:
    """Plain arithmetic mean, summed with ``math.fsum`` so it can serve as an oracle."""
    values = list(losses)
    if not values:
        raise UsageError("cma_batch needs at least one value")
    return math.fsum(values) / len(values)


@dataclass(frozen=True)
class LifetimeEstimate:
    total_years: float
    remaining_years: float
    elapsed_years: float
    step_index: int


def estimate_lifetime(state: CmaState, interval_hours: float = 1.0) -> LifetimeEstimate:
    """
    Lifetime in years from the current CMA.

    ``remaining = dt / (8760 * cma)`` is the life left if aging continues at
    the average rate seen so far; ``elapsed = n * dt / 8760`` is the time
    already observed. The total is their sum.

    Raises:
        UsageError: no values have been seen yet
        NoAgingError: the CMA is zero, so the estimate is unbounded
    """
    if state.count < 1:
        raise UsageError("cannot estimate a lifetime before the first interval")
    if not (interval_hours > 0):
        raise DomainError(f"interval_hours must be positive, got {interval_hours!r}")
    if state.cma == 0:
        raise NoAgingError("no observable aging so far; lifetime estimate is unbounded")
    remaining = interval_hours / (HOURS_PER_YEAR * state.cma)
    elapsed = state.count * interval_hours / HOURS_PER_YEAR
    return LifetimeEstimate(remaining + elapsed, remaining, elapsed, state.count)


@dataclass
class ConvergenceMonitor:
    """
    Flags convergence once ``window`` consecutive relative changes of the
    total lifetime estimate have all been below ``tolerance``.

    Only the last ``window + 1`` estimates are kept. ``converged_at`` is the
    step index of the first estimate completing such a run; it is never
    cleared afterwards.
    """

    tolerance: float = 1e-5
    window: int = 24
    recent_estimates: Deque[float] = field(default_factory=deque)
    converged_at: Optional[int] = None
    last_step: Optional[int] = None
    streak: int = 0

    def __post_init__(self):
        if not (self.tolerance > 0):
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")
        if int(self.window) != self.window or self.window < 1:
            raise DomainError(f"window must be an integer >= 1, got {self.window!r}")
        self.window = int(self.window)
        self.recent_estimates = deque(self.recent_estimates, maxlen=self.window + 1)

    @property
    def converged(self) -> bool:
        return self.converged_at is not None

    def update(self, estimate: LifetimeEstimate) -> Optional[int]:
        step = estimate.step_index
        if self.last_step is not None and step <= self.last_step:
            raise UsageError(f"estimate for step {step} arrived after step {self.last_step}")
        if self.recent_estimates:
            previous = self.recent_estimates[-1]
            change = abs(estimate.total_years - previous) / previous
            self.streak = self.streak + 1 if change < self.tolerance else 0
        self.recent_estimates.append(estimate.total_years)
        self.last_step = step
        if self.converged_at is None and self.streak >= self.window:
            self.converged_at = step
        return self.converged_at


def check_convergence(monitor: ConvergenceMonitor, estimate: LifetimeEstimate) -> Optional[int]:
    """Feed one estimate; returns the convergence step, or ``None`` while not converged."""
    return monitor.update(estimate)
