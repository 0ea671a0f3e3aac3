"""Transformer insulation aging and streaming lifetime estimation."""

from .aging import (
    AgingConstants,
    AgingRecord,
    age_interval,
    aging_acceleration_factor,
    equivalent_aging_factor,
    interval_loss_of_life,
    per_unit_life,
)
from .estimator import (
    CmaState,
    ConvergenceMonitor,
    LifetimeEstimate,
    check_convergence,
    cma_batch,
    cma_update,
    estimate_lifetime,
)
from .estimators import AgingTransformer, CmaLifetimeEstimator, HotspotTemperatureModel
from .exceptions import DomainError, NoAgingError, UsageError, ValidationError, XfmrLifeError
from .runner import RunRecord, StreamingLifetimeRun
from .scenarios import ClimateSpec, LoadSpec, OverloadSpec, apply_overload, build_case, synth_ambient, synth_load
from .thermal import (
    OperatingInterval,
    ThermalState,
    TransformerCharacteristics,
    hotspot_rise_boundary,
    hotspot_temperature,
    simulate,
    simulate_interval,
    topoil_rise_boundary,
    transient_rise,
)

__version__ = "0.1.0"
