import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq, root

from ringlogic.device import (
    TABLE1,
    CarrierShifter,
    DeviceError,
    Gate,
    GateProgram,
    RingParams,
    ThermalTuner,
    carrier_shift_static,
    default_tuner,
    fit_heater_efficiency,
    fit_ring_params,
    photon_lifetime,
    program_for,
    resonance_wavelength,
    thermal_shift,
)
from ringlogic.spectral import transmission

# Frozen from a 2-D scipy root-finder on numerically measured FWHM and peak
# (see _measured_passband); independent of the closed-form fit.
FIT_T = 0.83971838
FIT_A = 0.96461994
# numpy.linalg.lstsq of the heater table shift on power, no intercept
LSQ_EFFICIENCY = 0.30911507


def _measured_passband(t, a, fsr=9.66):
    def drop(d):
        x = a * t * t
        return (1 - t * t) ** 2 * a / (1 - 2 * x * np.cos(2 * np.pi * d / fsr) + x * x)

    peak = drop(0.0)
    half = brentq(lambda d: drop(d) - peak / 2, 0.0, fsr / 2)
    return 2 * half, peak


def test_fit_matches_root_finder_oracle():
    p = fit_ring_params(1.2, 0.82, 9.66, 1545.0)
    assert p.self_coupling_1 == p.self_coupling_2
    assert p.self_coupling_1 == pytest.approx(FIT_T, abs=1e-7)
    assert p.round_trip_amplitude == pytest.approx(FIT_A, abs=1e-7)
    sol = root(lambda v: np.subtract(_measured_passband(*v), (1.2, 0.82)), [0.8, 0.95])
    assert sol.success
    assert sol.x == pytest.approx([p.self_coupling_1, p.round_trip_amplitude], abs=1e-7)


def test_fit_round_trip_by_numerical_sweep(params):
    lam = np.linspace(1540.0, 1560.0, 400_001)
    drop = transmission(params, "drop", lam, 1545.0)
    peak = drop.max()
    above = lam[drop >= peak / 2]
    # peaks at 1545 and 1545 + FSR inside the window
    local_max = (drop[1:-1] > drop[:-2]) & (drop[1:-1] > drop[2:])
    peaks = lam[1:-1][local_max]
    assert peak == pytest.approx(0.82, abs=1e-3)
    first = above[above < 1550.0]
    assert first.max() - first.min() == pytest.approx(1.2, abs=1e-3)
    assert peaks[1] - peaks[0] == pytest.approx(9.66, abs=1e-2)


def test_round_trip_length_from_fsr():
    p = fit_ring_params(1.2, 0.82, 9.66, 1545.0, group_index=4.2)
    assert p.round_trip_length == pytest.approx(1545.0**2 / (4.2 * 9.66) / 1e3)
    assert p.round_trip_length == pytest.approx(58.8, abs=0.05)
    assert p.fsr == pytest.approx(9.66)


def test_lossless_symmetric_peak_is_unity():
    p = RingParams(58.8, 4.2, 0.84, 0.84, 1.0, 1544.6)
    assert p.peak_drop == pytest.approx(1.0, abs=1e-12)
    assert transmission(p, "drop", 1545.0, 1545.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("kwargs", [
    dict(peak_drop_target=1.0),
    dict(peak_drop_target=0.0),
    dict(fwhm_target=10.0),
    dict(fwhm_target=-1.0),
])
def test_fit_rejects_bad_targets(kwargs):
    with pytest.raises(DeviceError):
        fit_ring_params(**kwargs)


def test_ring_invariants_enforced():
    with pytest.raises(DeviceError):
        RingParams(58.8, 4.2, 1.0, 0.8, 0.9, 1544.6)
    with pytest.raises(DeviceError):
        RingParams(58.8, 4.2, 0.8, 0.8, 1.2, 1544.6)
    with pytest.raises(DeviceError):
        RingParams(58.8, 4.2, 0.8, 0.8, 0.9, 1560.0)


def test_heater_efficiency_is_least_squares():
    assert fit_heater_efficiency() == pytest.approx(LSQ_EFFICIENCY, abs=1e-8)


def test_thermal_shift_examples():
    tuner = default_tuner()
    assert thermal_shift(tuner, 0.0) == 0.0
    assert thermal_shift(tuner, 3.52) == pytest.approx(1.10, rel=0.02)
    assert thermal_shift(ThermalTuner(0.3125), 2.93) == pytest.approx(0.9156, abs=1e-4)
    with pytest.raises(DeviceError):
        thermal_shift(tuner, -0.1)
    with pytest.raises(DeviceError):
        thermal_shift(tuner, tuner.max_power + 1)


@given(st.floats(0, 5), st.floats(0, 5))
def test_thermal_shift_linear(p1, p2):
    tuner = default_tuner()
    assert thermal_shift(tuner, p1 + p2) == pytest.approx(thermal_shift(tuner, p1) + thermal_shift(tuner, p2), abs=1e-12)


def test_carrier_shift_examples():
    s = CarrierShifter()
    assert carrier_shift_static(s, 0, 0) == 0.0
    assert carrier_shift_static(s, 1, 1) == pytest.approx(-0.70)
    assert carrier_shift_static(s, 1, 0) == carrier_shift_static(s, 0, 1) == pytest.approx(-0.35)


@given(st.floats(0, 1), st.floats(0, 1))
def test_carrier_shift_symmetric(x, w):
    s = CarrierShifter()
    assert carrier_shift_static(s, x, w) == carrier_shift_static(s, w, x)


def test_carrier_levels_clamped(caplog):
    s = CarrierShifter()
    assert carrier_shift_static(s, 1.5, -0.2) == pytest.approx(-0.35)
    assert "clamped" in caplog.text


@pytest.mark.parametrize("gate", list(Gate))
def test_table1_consistency(gate):
    power, detuning, shift = TABLE1[gate.value]
    prog = program_for(gate)
    assert prog.programmed_detuning == detuning
    assert prog.heater_power == pytest.approx(power, rel=0.02)
    assert default_tuner().efficiency * prog.heater_power == pytest.approx(shift, rel=1e-12)
    # single base resonance for all programs
    base = 1545.0 - 0.4
    assert prog.programmed_resonance == pytest.approx(base + thermal_shift(default_tuner(), prog.heater_power), abs=1e-6)
    assert prog.programmed_resonance - prog.input_wavelength == pytest.approx(detuning, abs=1e-9)


def test_resonance_composition(params, programs):
    tuner, s = default_tuner(), CarrierShifter()
    and_prog = programs[Gate.AND]
    assert resonance_wavelength(params, tuner, s, and_prog.heater_power, 0, 0) == pytest.approx(1545.7)
    assert resonance_wavelength(params, tuner, s, and_prog.heater_power, 1, 1) == pytest.approx(1545.0)
    assert resonance_wavelength(params, tuner, s, 0.0, 0, 0) == params.base_resonance


def test_program_errors():
    with pytest.raises(DeviceError):
        program_for(Gate.AND, tuner=ThermalTuner(0.3, max_power=1.0))
    with pytest.raises(DeviceError):
        GateProgram(Gate.AND, -0.1, 1.0, 1544.9, 1545.0)


def test_photon_lifetime_scales_inverse_fwhm():
    assert photon_lifetime(2.4) == pytest.approx(photon_lifetime(1.2) / 2)
    # lambda^2 / (2 pi c FWHM) at 1545 nm, 1.2 nm
    assert photon_lifetime(1.2) == pytest.approx((1545e-9) ** 2 / (2 * math.pi * 299792458.0 * 1.2e-9) * 1e12)
