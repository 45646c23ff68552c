"""Ring parameters and the two resonance-tuning mechanisms.

The ring is a symmetric add-drop microring. Its operand-independent
resonance is red-shifted by a microheater (programming terminal) and
blue-shifted by carrier injection in two PN sections (operand terminals).
Both tuning mechanisms are calibrated scalars, not solver outputs.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

log = logging.getLogger(__name__)

DEFAULT_WAVELENGTH = 1545.0  # nm
DEFAULT_GROUP_INDEX = 4.2
DEFAULT_FSR = 9.66  # nm
DEFAULT_FWHM = 1.2  # nm
DEFAULT_PEAK_DROP = 0.82

# (heater power mW, programmed detuning nm, required shift nm) per drop-port function
TABLE1 = {
    "AND": (3.52, 0.7, 1.1),
    "OR": (2.93, 0.5, 0.9),
    "XOR": (2.3, 0.3, 0.7),
}

# Base resonance sits this far blue of the input laser.
BASE_OFFSET = -0.4  # nm
FULL_DRIVE_BLUESHIFT = 0.35  # nm per input terminal
# Carrier time constant fitted by sweep.calibrate_tau() to the 42 Gb/s AND anchor.
CARRIER_TAU = 6.627  # ps


class DeviceError(ValueError):
    """Raised for out-of-range device parameters or infeasible targets."""


class Gate(str, Enum):
    """Drop-port logic functions. The through port yields the complement."""

    AND = "AND"
    OR = "OR"
    XOR = "XOR"

    def truth(self, x: int, w: int) -> int:
        if self is Gate.AND:
            return x & w
        if self is Gate.OR:
            return x | w
        return x ^ w

    @property
    def complement_name(self) -> str:
        return "N" + self.value if self is not Gate.XOR else "XNOR"


# Six named functions mapped onto (drop-port gate, port).
FUNCTIONS = {
    "AND": (Gate.AND, "drop"),
    "OR": (Gate.OR, "drop"),
    "XOR": (Gate.XOR, "drop"),
    "NAND": (Gate.AND, "through"),
    "NOR": (Gate.OR, "through"),
    "XNOR": (Gate.XOR, "through"),
}


def resolve_function(name: str) -> tuple[Gate, str]:
    """Map any of the six function names to ``(gate, port)``."""
    try:
        return FUNCTIONS[name.upper()]
    except KeyError:
        raise DeviceError(f"unknown logic function {name!r}") from None


@dataclass(frozen=True)
class RingParams:
    """Geometric/optical state of a symmetric add-drop ring.

    Parameters
    ----------
    round_trip_length : float
        Ring circumference [um].
    group_index : float
        Group index; together with the length sets the FSR.
    self_coupling_1, self_coupling_2 : float
        Field self-coupling coefficients of the two bus couplers, in (0, 1).
    round_trip_amplitude : float
        Field amplitude surviving one round trip, in (0, 1].
    base_resonance : float
        Resonance with no heater power and no carriers [nm].
    reference_wavelength : float
        Wavelength at which the FSR is evaluated [nm].
    """

    round_trip_length: float
    group_index: float
    self_coupling_1: float
    self_coupling_2: float
    round_trip_amplitude: float
    base_resonance: float
    reference_wavelength: float = DEFAULT_WAVELENGTH

    def __post_init__(self) -> None:
        for name in ("self_coupling_1", "self_coupling_2"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DeviceError(f"{name} must lie in (0, 1), got {v}")
        if not 0.0 < self.round_trip_amplitude <= 1.0:
            raise DeviceError(
                f"round_trip_amplitude must lie in (0, 1], got {self.round_trip_amplitude}"
            )
        if self.round_trip_length <= 0 or self.group_index <= 0:
            raise DeviceError("round_trip_length and group_index must be positive")
        if not self.fwhm < self.fsr:
            raise DeviceError(f"FWHM {self.fwhm:.4g} nm must be below FSR {self.fsr:.4g} nm")
        if abs(self.base_resonance - self.reference_wavelength) > self.fsr:
            raise DeviceError("base_resonance must be within one FSR of reference_wavelength")

    @property
    def fsr(self) -> float:
        """Free spectral range [nm]."""
        lam = self.reference_wavelength
        return lam**2 / (self.group_index * self.round_trip_length * 1e3)

    @property
    def fwhm(self) -> float:
        """Drop-port full width at half maximum [nm], closed form."""
        x = self.round_trip_amplitude * self.self_coupling_1 * self.self_coupling_2
        cos_half = (1.0 + x**2 - 2.0 * (1.0 - x) ** 2) / (2.0 * x)
        if cos_half <= -1.0:
            # passband never falls to half height within an FSR
            return self.fsr
        return self.fsr * math.acos(cos_half) / math.pi

    @property
    def peak_drop(self) -> float:
        t1, t2, a = self.self_coupling_1, self.self_coupling_2, self.round_trip_amplitude
        return (1 - t1**2) * (1 - t2**2) * a / (1 - a * t1 * t2) ** 2

    @property
    def photon_lifetime(self) -> float:
        """Cavity energy lifetime lambda^2 / (2 pi c FWHM) [ps]."""
        return photon_lifetime(self.fwhm, self.reference_wavelength)

    def replace(self, **changes) -> "RingParams":
        from dataclasses import replace

        return replace(self, **changes)


def photon_lifetime(fwhm: float, wavelength: float = DEFAULT_WAVELENGTH) -> float:
    """Photon lifetime [ps] for a passband of ``fwhm`` nm at ``wavelength`` nm."""
    c = 299792458.0
    lam = wavelength * 1e-9
    return lam**2 / (2 * math.pi * c * fwhm * 1e-9) * 1e12


@dataclass(frozen=True)
class ThermalTuner:
    """Microheater: linear red-shift per unit electrical power."""

    efficiency: float  # nm / mW
    max_power: float = 10.0  # mW

    def __post_init__(self) -> None:
        if self.efficiency <= 0:
            raise DeviceError("heater efficiency must be positive")
        if self.max_power <= 0:
            raise DeviceError("max_power must be positive")


@dataclass(frozen=True)
class CarrierShifter:
    """Forward-biased PN sections: blue-shift per fully driven input.

    ``rise_tau``/``fall_tau`` are the carrier relaxation time constants used by
    the transient simulator; the static shift ignores them.
    """

    full_drive_blueshift: float = FULL_DRIVE_BLUESHIFT  # nm
    drive_amplitude: float = 1.5  # V
    rise_tau: float = CARRIER_TAU  # ps
    fall_tau: float = CARRIER_TAU  # ps

    def __post_init__(self) -> None:
        if self.full_drive_blueshift <= 0:
            raise DeviceError("full_drive_blueshift must be positive")
        if self.drive_amplitude <= 0:
            raise DeviceError("drive_amplitude must be positive")
        if self.rise_tau <= 0 or self.fall_tau <= 0:
            raise DeviceError("carrier time constants must be positive")


@dataclass(frozen=True)
class GateProgram:
    """A logic function bound to a heater operating point."""

    function: Gate
    programmed_detuning: float  # nm, resonance minus input wavelength
    heater_power: float  # mW
    programmed_resonance: float  # nm
    input_wavelength: float  # nm

    def __post_init__(self) -> None:
        if self.programmed_detuning <= 0:
            raise DeviceError("programmed resonance must sit red of the input wavelength")
        if abs(self.programmed_resonance - self.input_wavelength - self.programmed_detuning) > 1e-6:
            raise DeviceError("programmed_detuning inconsistent with programmed_resonance")


def fit_heater_efficiency(table=TABLE1) -> float:
    """Least-squares slope through the origin of shift versus heater power."""
    p = np.array([row[0] for row in table.values()])
    s = np.array([row[2] for row in table.values()])
    return float(p @ s / (p @ p))


HEATER_EFFICIENCY = fit_heater_efficiency()


def default_tuner() -> ThermalTuner:
    return ThermalTuner(efficiency=HEATER_EFFICIENCY)


def fit_ring_params(
    fwhm_target: float = DEFAULT_FWHM,
    peak_drop_target: float = DEFAULT_PEAK_DROP,
    fsr_target: float = DEFAULT_FSR,
    reference_wavelength: float = DEFAULT_WAVELENGTH,
    group_index: float = DEFAULT_GROUP_INDEX,
    base_resonance: float | None = None,
) -> RingParams:
    """Solve symmetric coupling and round-trip loss for a drop passband.

    The half-maximum condition fixes the product ``a*t**2``; the peak drop
    then fixes ``t`` (a quadratic in ``t``). Both steps are closed form, so
    there is no iteration to fail to converge.
    """
    if not 0.0 < peak_drop_target < 1.0:
        raise DeviceError(f"peak_drop_target must lie in (0, 1), got {peak_drop_target}")
    if not 0.0 < fwhm_target < fsr_target:
        raise DeviceError("need 0 < fwhm_target < fsr_target")
    if base_resonance is None:
        base_resonance = reference_wavelength + BASE_OFFSET

    length_um = reference_wavelength**2 / (group_index * fsr_target) / 1e3
    c = math.cos(math.pi * fwhm_target / fsr_target)
    # half-maximum: x**2 - (4 - 2c) x + 1 = 0, root inside (0, 1)
    b = 2.0 - c
    x = b - math.sqrt(b * b - 1.0)
    k = (1.0 - x) * math.sqrt(peak_drop_target / x)
    t = (-k + math.sqrt(k * k + 4.0)) / 2.0
    a = x / t**2
    if not (0.0 < t < 1.0 and 0.0 < a <= 1.0):
        raise DeviceError(
            f"infeasible target: FWHM {fwhm_target} nm with peak {peak_drop_target} "
            f"needs t={t:.4g}, a={a:.4g}"
        )
    return RingParams(
        round_trip_length=length_um,
        group_index=group_index,
        self_coupling_1=t,
        self_coupling_2=t,
        round_trip_amplitude=a,
        base_resonance=base_resonance,
        reference_wavelength=reference_wavelength,
    )


def thermal_shift(tuner: ThermalTuner, power: float) -> float:
    """Red shift [nm] produced by ``power`` mW of heater power."""
    if not 0.0 <= power <= tuner.max_power:
        raise DeviceError(f"heater power {power} mW outside [0, {tuner.max_power}]")
    return tuner.efficiency * power


def _clamp_level(v: float, name: str) -> float:
    if v < 0.0 or v > 1.0:
        log.warning("%s level %g outside [0, 1]; clamped", name, v)
        return min(max(v, 0.0), 1.0)
    return v


def carrier_shift_static(shifter: CarrierShifter, x_level: float, w_level: float) -> float:
    """Signed resonance shift [nm] from normalized operand drive levels (negative = blue)."""
    x = _clamp_level(x_level, "x")
    w = _clamp_level(w_level, "w")
    return -shifter.full_drive_blueshift * (x + w)


def resonance_wavelength(
    params: RingParams,
    tuner: ThermalTuner,
    shifter: CarrierShifter,
    heater_power: float,
    x_level: float = 0.0,
    w_level: float = 0.0,
) -> float:
    """Instantaneous resonance [nm] for a heater power and operand drive levels."""
    return (
        params.base_resonance
        + thermal_shift(tuner, heater_power)
        + carrier_shift_static(shifter, x_level, w_level)
    )


def program_for(
    function: Gate | str,
    input_wavelength: float = DEFAULT_WAVELENGTH,
    tuner: ThermalTuner | None = None,
    base_resonance: float | None = None,
) -> GateProgram:
    """Heater operating point that makes the drop port follow ``function``."""
    gate = Gate(function.upper()) if isinstance(function, str) else function
    tuner = tuner or default_tuner()
    if base_resonance is None:
        base_resonance = input_wavelength + BASE_OFFSET
    _, detuning, _ = TABLE1[gate.value]
    target = input_wavelength + detuning
    shift = target - base_resonance
    if shift < 0:
        raise DeviceError("heater cannot blue-shift the resonance")
    power = shift / tuner.efficiency
    if power > tuner.max_power:
        raise DeviceError(f"{gate.value} needs {power:.3f} mW, above max {tuner.max_power} mW")
    return GateProgram(
        function=gate,
        programmed_detuning=detuning,
        heater_power=power,
        programmed_resonance=target,
        input_wavelength=input_wavelength,
    )
