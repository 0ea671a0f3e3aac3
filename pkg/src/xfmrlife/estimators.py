"""
scikit-learn compatible wrappers around the thermal, aging and lifetime code.

They compose with :class:`sklearn.pipeline.Pipeline`::

    pipe = make_pipeline(HotspotTemperatureModel(), CmaLifetimeEstimator())
    pipe.fit(X)            # X columns: ambient_c, k_i, k_u
    pipe[-1].estimate_     # LifetimeEstimate after the last row

:class:`CmaLifetimeEstimator` also takes sensor data directly (one column
of hottest-spot temperatures) and supports ``partial_fit`` for streaming.
"""

import copy

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import _validation
from .aging import AgingConstants, aging_acceleration_factor, interval_loss_of_life
from .fileio import HOTSPOT_BOUNDS
from .runner import StreamingLifetimeRun
from .thermal import (
    AMBIENT_BOUNDS,
    CONTINUITY_MODE,
    PAPER_MODE,
    OperatingInterval,
    TransformerCharacteristics,
    simulate,
)


class HotspotTemperatureModel(TransformerMixin, BaseEstimator):
    """
    Hottest-spot temperature from ``[ambient_c, k_i, k_u]`` rows.

    Stateless apart from validated characteristics: ``fit`` only checks the
    parameters. In continuity mode each ``transform`` call is one contiguous
    stream whose first row starts from steady state.

    Parameters
    ----------
    loss_ratio, oil_exponent, winding_exponent : float
        Load/no-load loss ratio and the top-oil and winding exponents.
    rated_topoil_rise, rated_hotspot_rise : float
        Rated rises in °C.
    topoil_time_constant, winding_time_constant : float
        Time constants in hours.
    interval_hours : float
        Length of every row's interval.
    mode : {"paper", "continuity"}
        How each interval's initial rises are obtained.
    """

    def __init__(
        self,
        loss_ratio=7.43,
        oil_exponent=0.8,
        winding_exponent=0.8,
        rated_topoil_rise=53.9,
        rated_hotspot_rise=17.6,
        topoil_time_constant=6.8,
        winding_time_constant=0.0833,
        interval_hours=1.0,
        mode=PAPER_MODE,
    ):
        self.loss_ratio = loss_ratio
        self.oil_exponent = oil_exponent
        self.winding_exponent = winding_exponent
        self.rated_topoil_rise = rated_topoil_rise
        self.rated_hotspot_rise = rated_hotspot_rise
        self.topoil_time_constant = topoil_time_constant
        self.winding_time_constant = winding_time_constant
        self.interval_hours = interval_hours
        self.mode = mode

    def _characteristics(self):
        return TransformerCharacteristics(
            loss_ratio=self.loss_ratio,
            oil_exponent=self.oil_exponent,
            winding_exponent=self.winding_exponent,
            rated_hotspot_rise=self.rated_hotspot_rise,
            rated_topoil_rise=self.rated_topoil_rise,
            topoil_time_constant=self.topoil_time_constant,
            winding_time_constant=self.winding_time_constant,
        )

    def _check_X(self, X):
        X = _validation.check_columns(X, 3)
        _validation.check_bounds(X[:, 0], *AMBIENT_BOUNDS, name="ambient_c")
        _validation.check_nonnegative(X[:, 1:], "load ratio")
        return X

    def fit(self, X, y=None):
        if self.mode not in (PAPER_MODE, CONTINUITY_MODE):
            raise ValueError(f"mode must be 'paper' or 'continuity', got {self.mode!r}")
        X = self._check_X(X)
        self.characteristics_ = self._characteristics()
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "characteristics_")
        X = self._check_X(X)
        intervals = (OperatingInterval(a, ki, ku, self.interval_hours) for a, ki, ku in X.tolist())
        temps = [s.hotspot_temp for s in simulate(self.characteristics_, intervals, self.mode)]
        return np.asarray(temps, dtype=np.float64).reshape(-1, 1)


class AgingTransformer(TransformerMixin, BaseEstimator):
    """Maps hottest-spot temperature (°C) to ``[aging_factor, loss_of_life_pu]`` per row."""

    def __init__(
        self,
        per_unit_constant=9.8e-18,
        aging_rate=15000.0,
        reference_temp=383.0,
        interval_hours=1.0,
        normal_life=180000.0,
    ):
        self.per_unit_constant = per_unit_constant
        self.aging_rate = aging_rate
        self.reference_temp = reference_temp
        self.interval_hours = interval_hours
        self.normal_life = normal_life

    def fit(self, X, y=None):
        X = _validation.check_columns(X, 1)
        _validation.check_bounds(X[:, 0], *HOTSPOT_BOUNDS, name="theta_h_c", inclusive=False)
        self.constants_ = AgingConstants(self.per_unit_constant, self.aging_rate, self.reference_temp)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "constants_")
        X = _validation.check_columns(X, 1)
        _validation.check_bounds(X[:, 0], *HOTSPOT_BOUNDS, name="theta_h_c", inclusive=False)
        out = np.empty((X.shape[0], 2), dtype=np.float64)
        for row, theta in enumerate(X[:, 0].tolist()):
            factor = aging_acceleration_factor(theta, self.constants_)
            out[row, 0] = factor
            out[row, 1] = interval_loss_of_life(factor, self.interval_hours, self.normal_life)
        return out


class CmaLifetimeEstimator(BaseEstimator):
    """
    Streaming lifetime estimator over hottest-spot temperatures.

    Each row is one interval. Aging factor and loss of life are computed per
    row, averaged with a cumulative moving average and turned into a
    lifetime estimate in years after every row.

    Attributes
    ----------
    run_ : StreamingLifetimeRun
        The live stream state.
    estimate_ : LifetimeEstimate
        Estimate after the last row seen.
    converged_at_ : int or None
        Number of rows seen when convergence was first reached.
    n_samples_seen_ : int
    """

    def __init__(
        self,
        tolerance=1e-5,
        window=24,
        interval_hours=1.0,
        normal_life=180000.0,
        per_unit_constant=9.8e-18,
        aging_rate=15000.0,
        reference_temp=383.0,
    ):
        self.tolerance = tolerance
        self.window = window
        self.interval_hours = interval_hours
        self.normal_life = normal_life
        self.per_unit_constant = per_unit_constant
        self.aging_rate = aging_rate
        self.reference_temp = reference_temp

    def _new_run(self):
        return StreamingLifetimeRun(
            chars=TransformerCharacteristics(normal_insulation_life=self.normal_life),
            aging=AgingConstants(self.per_unit_constant, self.aging_rate, self.reference_temp),
            tolerance=self.tolerance,
            window=self.window,
            interval_hours=self.interval_hours,
        )

    def _check_X(self, X):
        X = _validation.check_columns(X, 1)
        _validation.check_bounds(X[:, 0], *HOTSPOT_BOUNDS, name="theta_h_c", inclusive=False)
        return X

    def fit(self, X, y=None):
        for attr in ("run_", "estimate_", "converged_at_", "n_samples_seen_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        X = self._check_X(X)
        if not hasattr(self, "run_"):
            self.run_ = self._new_run()
            self.n_features_in_ = 1
        for theta in X[:, 0].tolist():
            self.run_.step_hotspot(theta)
        self.estimate_ = self.run_.last_estimate
        self.converged_at_ = self.run_.converged_at
        self.n_samples_seen_ = self.run_.count
        return self

    def predict(self, X):
        """
        Lifetime trajectory (total years per row) if ``X`` arrived next.

        The fitted state is left untouched.
        """
        check_is_fitted(self, "run_")
        X = self._check_X(X)
        run = copy.deepcopy(self.run_)
        return np.array([run.step_hotspot(t).estimate_total_years for t in X[:, 0].tolist()])

    @property
    def lifetime_years_(self):
        check_is_fitted(self, "run_")
        return self.estimate_.total_years
