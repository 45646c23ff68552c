"""Drop/through transmission, spectra, and DC truth tables."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .device import (
    CarrierShifter,
    Gate,
    GateProgram,
    RingParams,
    ThermalTuner,
    default_tuner,
    resonance_wavelength,
)

PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
PORTS = ("drop", "through")


class ProgramInvalid(ValueError):
    """A program whose logic levels overlap on some port."""


def transmission(params: RingParams, port: str, wavelength, resonance):
    """Power transmission of the add-drop ring.

    The round-trip phase is taken relative to ``resonance``:
    ``phi = 2 pi (wavelength - resonance) / FSR``. Accepts scalars or arrays.
    """
    t1, t2 = params.self_coupling_1, params.self_coupling_2
    a = params.round_trip_amplitude
    phi = 2.0 * np.pi * (np.asarray(wavelength, dtype=float) - resonance) / params.fsr
    cos_phi = np.cos(phi)
    x = a * t1 * t2
    denom = 1.0 - 2.0 * x * cos_phi + x * x
    if port == "drop":
        out = (1.0 - t1**2) * (1.0 - t2**2) * a / denom
    elif port == "through":
        out = (a * a * t2 * t2 - 2.0 * x * cos_phi + t1 * t1) / denom
    else:
        raise ValueError(f"port must be 'drop' or 'through', got {port!r}")
    return out if out.ndim else float(out)


def lorentzian_drop(params: RingParams, detuning):
    """Lorentzian approximation of the drop passband."""
    d = np.asarray(detuning, dtype=float)
    return params.peak_drop / (1.0 + (2.0 * d / params.fwhm) ** 2)


@dataclass(frozen=True)
class Spectrum:
    wavelengths: np.ndarray
    drop: np.ndarray
    through: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.wavelengths)
        if len(self.drop) != n or len(self.through) != n:
            raise ValueError("spectrum arrays must have equal lengths")
        if n > 1 and not np.all(np.diff(self.wavelengths) > 0):
            raise ValueError("wavelength axis must be strictly increasing")

    @property
    def peak_wavelength(self) -> float:
        return float(self.wavelengths[np.argmax(self.drop)])


def operand_resonance(
    params: RingParams,
    program: GateProgram,
    x_level: float,
    w_level: float,
    tuner: ThermalTuner | None = None,
    shifter: CarrierShifter | None = None,
) -> float:
    return resonance_wavelength(
        params,
        tuner or default_tuner(),
        shifter or CarrierShifter(),
        program.heater_power,
        x_level,
        w_level,
    )


def spectrum(
    params: RingParams,
    program: GateProgram,
    x_bit: int,
    w_bit: int,
    window: tuple[float, float] | None = None,
    n_points: int = 2001,
    tuner: ThermalTuner | None = None,
    shifter: CarrierShifter | None = None,
) -> Spectrum:
    """Sampled drop/through spectra with the resonance set by the operand bits."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if window is None:
        window = (program.input_wavelength - 2.0, program.input_wavelength + 2.0)
    lo, hi = window
    if not hi > lo:
        raise ValueError(f"empty wavelength range {window}")
    lam = np.linspace(lo, hi, n_points)
    res = operand_resonance(params, program, x_bit, w_bit, tuner, shifter)
    return Spectrum(lam, transmission(params, "drop", lam, res), transmission(params, "through", lam, res))


@dataclass(frozen=True)
class TruthRow:
    x: int
    w: int
    drop_level: float
    through_level: float
    drop_bit: int
    through_bit: int


@dataclass(frozen=True)
class DcTruthTable:
    function: Gate
    rows: tuple[TruthRow, ...]
    dc_oma: dict = field(default_factory=dict)

    def row(self, x: int, w: int) -> TruthRow:
        return next(r for r in self.rows if (r.x, r.w) == (x, w))

    def levels(self, port: str) -> list[float]:
        return [getattr(r, f"{port}_level") for r in self.rows]

    def bits(self, port: str) -> list[int]:
        return [getattr(r, f"{port}_bit") for r in self.rows]


def separation(levels, bits) -> float:
    """Minimum logic-1 level minus maximum logic-0 level."""
    ones = [v for v, b in zip(levels, bits) if b]
    zeros = [v for v, b in zip(levels, bits) if not b]
    return min(ones) - max(zeros)


def _rows(params, program, tuner, shifter):
    rows = []
    for x, w in PAIRS:
        res = operand_resonance(params, program, x, w, tuner, shifter)
        bit = program.function.truth(x, w)
        rows.append(
            TruthRow(
                x=x,
                w=w,
                drop_level=transmission(params, "drop", program.input_wavelength, res),
                through_level=transmission(params, "through", program.input_wavelength, res),
                drop_bit=bit,
                through_bit=1 - bit,
            )
        )
    return tuple(rows)


def dc_truth_table(
    params: RingParams,
    program: GateProgram,
    tuner: ThermalTuner | None = None,
    shifter: CarrierShifter | None = None,
) -> DcTruthTable:
    """Levels at the input wavelength for the four operand pairs.

    Raises
    ------
    ProgramInvalid
        If either port's logic-1 and logic-0 levels overlap.
    """
    rows = _rows(params, program, tuner, shifter)
    table = DcTruthTable(program.function, rows)
    for port in PORTS:
        oma = separation(table.levels(port), table.bits(port))
        table.dc_oma[port] = oma
        if oma <= 0:
            ones = [(r.x, r.w) for r in rows if getattr(r, f"{port}_bit")]
            zeros = [(r.x, r.w) for r in rows if not getattr(r, f"{port}_bit")]
            raise ProgramInvalid(
                f"{program.function.value} program: {port} port separation {oma:.4f} <= 0 "
                f"(ones at {ones} overlap zeros at {zeros})"
            )
    return table


def verify_logic(
    params: RingParams,
    program: GateProgram,
    tuner: ThermalTuner | None = None,
    shifter: CarrierShifter | None = None,
) -> dict:
    """Per-port pass/fail report. Never raises on overlapping levels."""
    rows = _rows(params, program, tuner, shifter)
    report = {}
    for port in PORTS:
        levels = [getattr(r, f"{port}_level") for r in rows]
        bits = [getattr(r, f"{port}_bit") for r in rows]
        oma = separation(levels, bits)
        report[port] = {
            "pass": oma > 0,
            "dc_oma": oma,
            "levels": {(r.x, r.w): lv for r, lv in zip(rows, levels)},
            "bands": {(r.x, r.w): ("upper" if b else "lower") for r, b in zip(rows, bits)},
        }
    return report
