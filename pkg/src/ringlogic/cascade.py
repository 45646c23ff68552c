"""DWDM arrays of independently programmed ring gates and stochastic arithmetic."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .device import (
    BASE_OFFSET,
    CarrierShifter,
    Gate,
    GateProgram,
    RingParams,
    fit_ring_params,
    program_for,
)
from .spectral import dc_truth_table
from .transient import bit_centers, nrz_drive, simulate_transient

SPACING_GUARD = 3.0  # channel spacing in units of FWHM


class CascadeError(ValueError):
    pass


class Mode(str, Enum):
    SIMD = "SIMD"
    MIMD = "MIMD"


@dataclass(frozen=True)
class Channel:
    wavelength: float  # nm
    program: GateProgram


@dataclass(frozen=True)
class ArrayConfig:
    channels: tuple[Channel, ...]
    mode: Mode = Mode.MIMD
    fwhm: float = 1.2  # nm

    def __post_init__(self) -> None:
        if not self.channels:
            raise CascadeError("array needs at least one channel")
        lams = [c.wavelength for c in self.channels]
        if any(b <= a for a, b in zip(lams, lams[1:])):
            raise CascadeError("channel wavelengths must be strictly increasing")
        guard = SPACING_GUARD * self.fwhm
        for a, b in zip(lams, lams[1:]):
            if b - a < guard * (1 - 1e-9):
                raise CascadeError(f"channel spacing {b - a:.3f} nm below guard {guard:.3f} nm")
        if self.mode is Mode.SIMD and len({c.program.function for c in self.channels}) > 1:
            raise CascadeError("SIMD arrays need one function on every channel")


def build_array(functions, start: float = 1545.0, spacing: float | None = None, fwhm: float = 1.2, mode=None) -> ArrayConfig:
    """Array of rings on an evenly spaced grid, one function per channel."""
    spacing = SPACING_GUARD * fwhm if spacing is None else spacing
    chans = []
    for i, f in enumerate(functions):
        lam = start + i * spacing
        chans.append(Channel(lam, program_for(f, lam)))
    if mode is None:
        mode = Mode.SIMD if len({c.program.function for c in chans}) == 1 else Mode.MIMD
    return ArrayConfig(tuple(chans), Mode(mode), fwhm)


@dataclass(frozen=True)
class StochasticStream:
    bits: tuple[int, ...]
    encoding: str  # "bernoulli" | "unary"
    nominal_value: float


def encode_stream(value: float, n_bits: int, encoding: str = "bernoulli", seed: int = 0) -> StochasticStream:
    if not 0.0 <= value <= 1.0:
        raise CascadeError(f"stream value must lie in [0, 1], got {value}")
    if n_bits < 1:
        raise CascadeError("n_bits must be at least 1")
    if encoding == "unary":
        ones = int(math.floor(value * n_bits + 0.5))
        bits = (1,) * ones + (0,) * (n_bits - ones)
    elif encoding == "bernoulli":
        rng = np.random.default_rng(seed)
        bits = tuple(int(b) for b in rng.random(n_bits) < value)
    else:
        raise CascadeError(f"unknown encoding {encoding!r}")
    return StochasticStream(bits, encoding, value)


def decode_stream(stream) -> float:
    bits = stream.bits if isinstance(stream, StochasticStream) else tuple(stream)
    if not bits:
        raise CascadeError("cannot decode an empty stream")
    return sum(bits) / len(bits)


def _channel_ring(params: RingParams, lam: float) -> RingParams:
    return params.replace(base_resonance=lam + BASE_OFFSET, reference_wavelength=lam)


def _run_transient(ring, program, shifter, xs, ws, bit_rate, input_power, samples_per_bit):
    table = dc_truth_table(ring, program)
    ones = [r.drop_level for r in table.rows if r.drop_bit]
    zeros = [r.drop_level for r in table.rows if not r.drop_bit]
    threshold = 0.5 * (min(ones) + max(zeros)) * 10.0 ** (input_power / 10.0)
    amp = shifter.drive_amplitude
    dx = nrz_drive(xs, bit_rate, amp, samples_per_bit)
    dw = nrz_drive(ws, bit_rate, amp, samples_per_bit)
    drop = simulate_transient(ring, program, shifter, dx, dw, input_power)["drop"]
    v = drop.samples[bit_centers(len(xs), samples_per_bit)]
    return tuple(int(s > threshold) for s in v)


def run_array(
    config: ArrayConfig,
    inputs,
    fidelity: str = "ideal",
    params: RingParams | None = None,
    shifter: CarrierShifter | None = None,
    bit_rate: float = 10.0,
    input_power: float = 5.0,
    samples_per_bit: int = 64,
) -> list[StochasticStream]:
    """Drop-port output stream of every channel.

    ``inputs`` holds one ``(x_stream, w_stream)`` pair per channel. With
    ``fidelity="ideal"`` each channel applies its truth table bitwise; with
    ``"transient"`` each channel is simulated and sliced at bit centers
    halfway between its DC logic levels.
    """
    if len(inputs) != len(config.channels):
        raise CascadeError("need one input pair per channel")
    pairs = []
    for x, w in inputs:
        xb = x.bits if isinstance(x, StochasticStream) else tuple(x)
        wb = w.bits if isinstance(w, StochasticStream) else tuple(w)
        pairs.append((xb, wb))
    lengths = {len(b) for pair in pairs for b in pair}
    if len(lengths) != 1:
        raise CascadeError(f"stream lengths differ across channels: {sorted(lengths)}")
    if fidelity not in ("ideal", "transient"):
        raise CascadeError(f"unknown fidelity {fidelity!r}")
    params = params or fit_ring_params(fwhm_target=config.fwhm)
    shifter = shifter or CarrierShifter()

    outputs = []
    for chan, (xs, ws) in zip(config.channels, pairs):
        gate = chan.program.function
        if fidelity == "ideal":
            bits = tuple(gate.truth(x, w) for x, w in zip(xs, ws))
        else:
            ring = _channel_ring(params, chan.wavelength)
            bits = _run_transient(ring, chan.program, shifter, xs, ws, bit_rate, input_power, samples_per_bit)
        outputs.append(StochasticStream(bits, "output", decode_stream(bits)))
    return outputs


OPERATIONS = {
    # operation: (gate, encoding, exact result)
    "multiply": (Gate.AND, "bernoulli", lambda a, b: a * b),
    "add": (Gate.OR, "unary", max),
    "subtract": (Gate.XOR, "unary", lambda a, b: abs(a - b)),
}


def arithmetic_demo(operation: str, a: float, b: float, n_bits: int = 10_000, seed: int = 0, encoding: str | None = None) -> dict:
    """Stochastic arithmetic on one programmed gate.

    Multiply uses AND on independent Bernoulli streams. Subtract and add use
    XOR and OR on aligned thermometer streams, giving ``|a - b|`` and
    ``max(a, b)``; OR is a saturating add, not a sum.
    """
    try:
        gate, default_enc, exact_fn = OPERATIONS[operation]
    except KeyError:
        raise CascadeError(f"unknown operation {operation!r}") from None
    enc = encoding or default_enc
    x = encode_stream(a, n_bits, enc, seed)
    w = encode_stream(b, n_bits, enc, seed + 1)
    out = run_array(build_array([gate]), [(x, w)])[0]
    result = decode_stream(out)
    if enc == "unary":
        qa = sum(x.bits) / n_bits
        qb = sum(w.bits) / n_bits
        exact = exact_fn(qa, qb)
    else:
        exact = exact_fn(a, b)
    return {"operation": operation, "a": a, "b": b, "result": result, "exact": exact, "abs_error": abs(result - exact)}
