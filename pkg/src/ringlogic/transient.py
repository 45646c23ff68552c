"""NRZ drive generation, time-domain ring response, and OMA measurement.

Dynamics per sample:

1. each operand's normalized carrier level relaxes toward ``v(t)/amplitude``
   with ``rise_tau`` or ``fall_tau`` (exact exponential update);
2. the resonance follows the two carrier levels through the static shift model;
3. the instantaneous transmitted power is ``P_in * T(lambda_in; resonance)``;
4. the cavity energy low-passes that power with the photon lifetime.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .device import (
    CarrierShifter,
    GateProgram,
    RingParams,
    ThermalTuner,
    default_tuner,
    thermal_shift,
)
from .spectral import transmission

# (order, second tap) for x^n + x^k + 1
PRBS_TAPS = {7: 6, 9: 5, 15: 14}

DEFAULT_SAMPLES_PER_BIT = 64
DEFAULT_N_BITS = 256
DEFAULT_SKIP_BITS = 8
SEED_X = 0x01
SEED_W = 0x55


class TransientError(ValueError):
    pass


@dataclass(frozen=True)
class BitSequence:
    bits: tuple[int, ...]
    generator_order: int
    seed: int

    def __post_init__(self) -> None:
        if not self.bits:
            raise TransientError("bit sequence must be nonempty")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)


def prbs(order: int = 7, seed: int = SEED_X, n_bits: int = DEFAULT_N_BITS) -> BitSequence:
    """Maximal-length Fibonacci LFSR output."""
    if order not in PRBS_TAPS:
        raise TransientError(f"unsupported PRBS order {order}; use one of {sorted(PRBS_TAPS)}")
    mask = (1 << order) - 1
    state = seed & mask
    if state == 0:
        raise TransientError("PRBS seed must be nonzero (modulo 2**order)")
    if n_bits < 1:
        raise TransientError("n_bits must be at least 1")
    tap = PRBS_TAPS[order]
    out = []
    for _ in range(n_bits):
        bit = ((state >> (order - 1)) ^ (state >> (tap - 1))) & 1
        state = ((state << 1) | bit) & mask
        out.append(bit)
    return BitSequence(tuple(out), order, seed)


@dataclass(frozen=True)
class DriveWaveform:
    samples: np.ndarray  # V
    dt: float  # ps
    amplitude: float  # V
    bit_rate: float  # Gb/s

    @property
    def samples_per_bit(self) -> int:
        return int(round(1000.0 / (self.bit_rate * self.dt)))

    @property
    def t(self) -> np.ndarray:
        return np.arange(len(self.samples)) * self.dt


@dataclass(frozen=True)
class OpticalWaveform:
    samples: np.ndarray  # mW
    dt: float  # ps
    input_power: float  # dBm
    wavelength: float  # nm

    @property
    def t(self) -> np.ndarray:
        return np.arange(len(self.samples)) * self.dt


@dataclass(frozen=True)
class OmaMeasurement:
    oma_mw: float
    ones_min: float
    zeros_max: float
    sampled_bit_count: int

    @property
    def oma_dbm(self) -> float:
        """OMA in dBm; ``-inf`` when the eye is closed."""
        return 10.0 * math.log10(self.oma_mw) if self.oma_mw > 0 else -math.inf

    @property
    def is_open(self) -> bool:
        return self.oma_mw > 0


def dbm_to_mw(p_dbm: float) -> float:
    return 10.0 ** (p_dbm / 10.0)


def mw_to_dbm(p_mw: float) -> float:
    return 10.0 * math.log10(p_mw)


def _relax(target: np.ndarray, alpha: float, initial: float) -> np.ndarray:
    """First-order exact update ``y[i+1] = u[i] + (y[i] - u[i]) * alpha``."""
    out = np.empty_like(target)
    out[0] = initial
    if len(target) > 1:
        # y[i+1] = alpha*y[i] + (1-alpha)*u[i]
        zi = np.array([alpha * initial])
        out[1:], _ = lfilter([1.0 - alpha], [1.0, -alpha], target[:-1], zi=zi)
    return out


def _relax_asymmetric(target: np.ndarray, alpha_rise: float, alpha_fall: float, initial: float) -> np.ndarray:
    out = np.empty_like(target)
    y = initial
    for i, u in enumerate(target):
        out[i] = y
        alpha = alpha_rise if u > y else alpha_fall
        y = u + (y - u) * alpha
    return out


def nrz_drive(
    bits,
    bit_rate: float = 10.0,
    amplitude: float = 1.5,
    samples_per_bit: int = DEFAULT_SAMPLES_PER_BIT,
    edge_tau: float = 0.0,
) -> DriveWaveform:
    """NRZ voltage waveform with optional single-pole edge smoothing.

    The smoothing filter starts from 0 V, so a leading one produces a rising edge.
    """
    if samples_per_bit < 8:
        raise TransientError("samples_per_bit must be at least 8")
    if edge_tau < 0:
        raise TransientError("edge_tau must be nonnegative")
    if bit_rate <= 0:
        raise TransientError("bit_rate must be positive")
    levels = np.repeat(np.asarray(list(bits), dtype=float), samples_per_bit) * amplitude
    dt = 1000.0 / (bit_rate * samples_per_bit)
    if edge_tau > 0:
        levels = _relax(levels, math.exp(-dt / edge_tau), 0.0)
        # exact response at each sample time; levels[i] is the state at t_i
    return DriveWaveform(levels, dt, amplitude, bit_rate)


def carrier_levels(drive: DriveWaveform, shifter: CarrierShifter) -> np.ndarray:
    """Normalized injected-carrier level, starting settled at the first drive value."""
    target = np.clip(drive.samples / shifter.drive_amplitude, 0.0, 1.0)
    a_rise = math.exp(-drive.dt / shifter.rise_tau)
    a_fall = math.exp(-drive.dt / shifter.fall_tau)
    if a_rise == a_fall:
        return _relax(target, a_rise, target[0])
    return _relax_asymmetric(target, a_rise, a_fall, target[0])


def simulate_transient(
    params: RingParams,
    program: GateProgram,
    shifter: CarrierShifter,
    drive_x: DriveWaveform,
    drive_w: DriveWaveform,
    input_power: float = 5.0,
    wavelength: float | None = None,
    tuner: ThermalTuner | None = None,
) -> dict[str, OpticalWaveform]:
    """Drop and through output power waveforms for two operand drives."""
    if drive_x.dt != drive_w.dt or len(drive_x.samples) != len(drive_w.samples):
        raise TransientError("drive waveforms must share dt and length")
    tuner = tuner or default_tuner()
    lam = program.input_wavelength if wavelength is None else wavelength
    dt = drive_x.dt

    n_x = carrier_levels(drive_x, shifter)
    n_w = carrier_levels(drive_w, shifter)
    res = (
        params.base_resonance
        + thermal_shift(tuner, program.heater_power)
        - shifter.full_drive_blueshift * (n_x + n_w)
    )
    p_in = dbm_to_mw(input_power)
    alpha = math.exp(-dt / params.photon_lifetime)
    out = {}
    for port in ("drop", "through"):
        inst = p_in * transmission(params, port, lam, res)
        out[port] = OpticalWaveform(_relax(inst, alpha, inst[0]), dt, input_power, lam)
    return out


def bit_centers(n_bits: int, samples_per_bit: int) -> np.ndarray:
    return np.arange(n_bits) * samples_per_bit + samples_per_bit // 2


def measure_oma(
    waveform: OpticalWaveform,
    expected_bits,
    samples_per_bit: int,
    skip_bits: int = DEFAULT_SKIP_BITS,
) -> OmaMeasurement:
    """Min of sampled ones minus max of sampled zeros, at bit centers.

    A closed eye is reported as a nonpositive ``oma_mw``, not raised.
    """
    if skip_bits < 2:
        raise TransientError("skip_bits must be at least 2 to allow settling")
    bits = np.asarray(list(expected_bits), dtype=int)[skip_bits:]
    if bits.size == 0 or bits.min() == bits.max():
        raise TransientError("OMA undefined: expected bits need both ones and zeros")
    idx = bit_centers(len(bits) + skip_bits, samples_per_bit)[skip_bits:]
    v = waveform.samples[idx]
    ones_min = float(v[bits == 1].min())
    zeros_max = float(v[bits == 0].max())
    return OmaMeasurement(ones_min - zeros_max, ones_min, zeros_max, int(bits.size))


def expected_output(gate, port: str, bits_x, bits_w) -> list[int]:
    drop = [gate.truth(x, w) for x, w in zip(bits_x, bits_w)]
    return drop if port == "drop" else [1 - b for b in drop]


def prbs_oma(
    params: RingParams,
    program: GateProgram,
    shifter: CarrierShifter,
    port: str,
    bit_rate: float,
    input_power: float = 5.0,
    n_bits: int = DEFAULT_N_BITS,
    samples_per_bit: int = DEFAULT_SAMPLES_PER_BIT,
    skip_bits: int = DEFAULT_SKIP_BITS,
    seeds: tuple[int, int] = (SEED_X, SEED_W),
    order: int = 7,
    edge_tau: float = 0.0,
) -> OmaMeasurement:
    """OMA of one port under two independent-seed PRBS drives."""
    bx = prbs(order, seeds[0], n_bits)
    bw = prbs(order, seeds[1], n_bits)
    amp = shifter.drive_amplitude
    dx = nrz_drive(bx, bit_rate, amp, samples_per_bit, edge_tau)
    dw = nrz_drive(bw, bit_rate, amp, samples_per_bit, edge_tau)
    wf = simulate_transient(params, program, shifter, dx, dw, input_power)[port]
    return measure_oma(wf, expected_output(program.function, port, bx, bw), samples_per_bit, skip_bits)
