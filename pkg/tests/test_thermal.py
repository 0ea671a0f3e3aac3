import math

import pytest
from hypothesis import given, strategies as st

from xfmrlife.exceptions import DomainError, UsageError
from xfmrlife.thermal import (
    OperatingInterval,
    ThermalState,
    TransformerCharacteristics,
    hotspot_rise_boundary,
    hotspot_temperature,
    simulate,
    simulate_interval,
    steady_state,
    topoil_rise_boundary,
    transient_rise,
)

CHARS = TransformerCharacteristics()

# Expected values below were evaluated with mpmath at 50 significant digits.
TOPOIL_K05 = 22.683794109645166
TOPOIL_K0 = 9.7932469391441561
HOTSPOT_K05 = 5.8058348074007347
TRANSIENT_ONE_TAU = 45.284822353142307
TOPOIL_K0_TO_1_AT_TAU = 37.674032332085549
THETA_K0_TO_1_AT_TAU = 85.274032332085549

loads = st.floats(min_value=0.0, max_value=3.0, allow_nan=False)
rises = st.floats(min_value=0.0, max_value=150.0, allow_nan=False)


class TestBoundaries:
    def test_rated_load_returns_rated_rise(self):
        assert topoil_rise_boundary(CHARS, 1.0) == 53.9
        assert hotspot_rise_boundary(CHARS, 1.0) == 17.6

    @pytest.mark.parametrize(
        "load, expected",
        [(0.5, TOPOIL_K05), (0.0, TOPOIL_K0)],
    )
    def test_topoil(self, load, expected):
        assert topoil_rise_boundary(CHARS, load) == pytest.approx(expected, rel=1e-13)

    def test_hotspot(self):
        assert hotspot_rise_boundary(CHARS, 0.5) == pytest.approx(HOTSPOT_K05, rel=1e-13)
        assert hotspot_rise_boundary(CHARS, 0.0) == 0.0

    def test_negative_load_rejected(self):
        with pytest.raises(DomainError):
            topoil_rise_boundary(CHARS, -0.1)
        with pytest.raises(DomainError):
            hotspot_rise_boundary(CHARS, -0.1)

    @given(loads, loads)
    def test_strictly_increasing(self, a, b):
        lo, hi = min(a, b), max(a, b)
        if hi - lo < 1e-6:
            return
        assert topoil_rise_boundary(CHARS, lo) < topoil_rise_boundary(CHARS, hi)
        if hi > 0:
            assert hotspot_rise_boundary(CHARS, lo) < hotspot_rise_boundary(CHARS, hi)


class TestTransient:
    def test_zero_elapsed_returns_initial(self):
        assert transient_rise(20.0, 60.0, 6.8, 0.0) == 20.0

    def test_one_time_constant(self):
        assert transient_rise(20.0, 60.0, 6.8, 6.8) == pytest.approx(TRANSIENT_ONE_TAU, rel=1e-14)

    def test_long_time_reaches_ultimate(self):
        assert transient_rise(20.0, 60.0, 6.8, 1e4) == pytest.approx(60.0, rel=1e-15)

    @pytest.mark.parametrize("tau", [0.0, -1.0])
    def test_nonpositive_time_constant(self, tau):
        with pytest.raises(DomainError):
            transient_rise(20.0, 60.0, tau, 1.0)

    @given(rises, st.floats(min_value=0.01, max_value=100), st.floats(min_value=0, max_value=1000))
    def test_constant_load_fixed_point(self, x, tau, t):
        assert transient_rise(x, x, tau, t) == x

    @given(rises, rises, st.floats(min_value=0.1, max_value=20), st.floats(min_value=0, max_value=5), st.floats(min_value=0.01, max_value=5))
    def test_monotone_in_elapsed(self, initial, ultimate, tau, t, dt):
        a = transient_rise(initial, ultimate, tau, t)
        b = transient_rise(initial, ultimate, tau, t + dt)
        if ultimate > initial:
            assert b >= a
        elif ultimate < initial:
            assert b <= a


class TestHotspotTemperature:
    @pytest.mark.parametrize(
        "args, expected",
        [((30, 53.9, 17.6), 101.5), ((0, 0, 0), 0.0), ((25, 45.285, 10.2), 80.485)],
    )
    def test_sum(self, args, expected):
        assert hotspot_temperature(*args) == pytest.approx(expected, abs=1e-12)

    @given(st.floats(-50, 50), rises, rises, st.floats(-10, 10))
    def test_shift_in_ambient(self, a, top, hs, c):
        assert hotspot_temperature(a + c, top, hs) == pytest.approx(hotspot_temperature(a, top, hs) + c, abs=1e-9)


class TestSimulateInterval:
    def test_rated_steady(self):
        state = simulate_interval(CHARS, OperatingInterval(30.0, 1.0, 1.0, 1.0))
        assert state.hotspot_temp == pytest.approx(101.5, abs=1e-12)

    def test_step_load(self):
        state = simulate_interval(CHARS, OperatingInterval(30.0, 0.0, 1.0, 6.8))
        assert state.topoil_rise == pytest.approx(TOPOIL_K0_TO_1_AT_TAU, rel=1e-13)
        assert state.hotspot_temp == pytest.approx(THETA_K0_TO_1_AT_TAU, rel=1e-13)
        assert state.hotspot_temp == state.topoil_rise + state.hotspot_rise + 30.0

    def test_modes_agree_when_initial_states_agree(self):
        interval = OperatingInterval(22.0, 0.6, 0.9, 1.0)
        prev = steady_state(CHARS, 0.0, 0.6)
        paper = simulate_interval(CHARS, interval, "paper")
        cont = simulate_interval(CHARS, interval, "continuity", prev)
        assert paper == cont

    def test_continuity_requires_prev(self):
        with pytest.raises(UsageError):
            simulate_interval(CHARS, OperatingInterval(22.0, 0.6, 0.9), "continuity")

    def test_unknown_mode(self):
        with pytest.raises(UsageError):
            simulate_interval(CHARS, OperatingInterval(22.0, 0.6, 0.9), "bogus")

    @given(st.floats(0, 1.5), st.floats(0.05, 24))
    def test_constant_load_independent_of_duration(self, k, dt):
        base = simulate_interval(CHARS, OperatingInterval(20.0, k, k, 1.0))
        other = simulate_interval(CHARS, OperatingInterval(20.0, k, k, dt))
        assert other.hotspot_temp == base.hotspot_temp

    def test_continuity_carries_state(self):
        intervals = [OperatingInterval(20.0, 0.5, 1.2), OperatingInterval(20.0, 1.2, 1.2)]
        first, second = simulate(CHARS, intervals, "continuity")
        # Top oil is still heating: second interval starts from the first's end, not from steady state.
        assert first.topoil_rise < second.topoil_rise < topoil_rise_boundary(CHARS, 1.2)
        paper_second = list(simulate(CHARS, intervals, "paper"))[1]
        assert paper_second.topoil_rise == pytest.approx(topoil_rise_boundary(CHARS, 1.2))


class TestValidation:
    def test_bad_characteristics(self):
        with pytest.raises(DomainError):
            TransformerCharacteristics(loss_ratio=0.0)
        with pytest.raises(DomainError):
            TransformerCharacteristics(oil_exponent=1.2)
        with pytest.raises(DomainError):
            TransformerCharacteristics(winding_time_constant=-1)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            OperatingInterval(30.0, -0.1, 1.0)
        with pytest.raises(DomainError):
            OperatingInterval(70.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            OperatingInterval(30.0, 1.0, 1.0, 0.0)

    def test_thermal_state_is_plain_value(self):
        s = ThermalState(1.0, 2.0, 3.0)
        assert s == ThermalState(1.0, 2.0, 3.0)
        assert not math.isnan(s.hotspot_temp)
