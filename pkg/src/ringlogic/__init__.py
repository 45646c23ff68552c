"""Behavioral simulator for a reprogrammable microring electro-optic logic gate."""
from .device import (
    CarrierShifter,
    Gate,
    GateProgram,
    RingParams,
    ThermalTuner,
    carrier_shift_static,
    fit_ring_params,
    program_for,
    resonance_wavelength,
    thermal_shift,
)
from .spectral import dc_truth_table, spectrum, transmission, verify_logic
from .transient import measure_oma, nrz_drive, prbs, simulate_transient
from .sweep import calibrate_tau, fwhm_sweep, max_bitrate, sweep_grid
from .costmodel import CircuitCost, ael_product, compare_costs, estimate_circuit_cost
from .cascade import arithmetic_demo, decode_stream, encode_stream, run_array

__version__ = "0.1.0"
