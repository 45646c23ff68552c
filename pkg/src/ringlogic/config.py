"""Plain-text run configuration: ``key = value`` lines, ``#`` comments."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path

from . import device
from .device import CarrierShifter, GateProgram, RingParams, ThermalTuner


class ConfigError(ValueError):
    pass


_UNITS = {
    "wavelength": "nm, input laser",
    "fwhm": "nm, drop-port passband",
    "peak_drop": "drop transmission on resonance",
    "fsr": "nm",
    "group_index": "",
    "base_offset": "nm, unprogrammed resonance minus input wavelength",
    "heater_efficiency": "nm/mW, red shift per heater power",
    "heater_max_power": "mW",
    "blueshift": "nm per fully driven operand input",
    "drive_amplitude": "V, NRZ high level",
    "rise_tau": "ps, carrier injection",
    "fall_tau": "ps, carrier removal",
    "input_power": "dBm",
    "bit_rate": "Gb/s",
    "samples_per_bit": "",
    "n_bits": "",
    "skip_bits": "bits ignored while settling",
    "prbs_order": "",
    "seed_x": "PRBS seed, operand x",
    "seed_w": "PRBS seed, operand w",
    "seed": "stochastic stream seed",
    "output_dir": "",
}


@dataclass(frozen=True)
class RunConfig:
    wavelength: float = device.DEFAULT_WAVELENGTH
    fwhm: float = device.DEFAULT_FWHM
    peak_drop: float = device.DEFAULT_PEAK_DROP
    fsr: float = device.DEFAULT_FSR
    group_index: float = device.DEFAULT_GROUP_INDEX
    base_offset: float = device.BASE_OFFSET
    heater_efficiency: float = device.HEATER_EFFICIENCY
    heater_max_power: float = 10.0
    blueshift: float = device.FULL_DRIVE_BLUESHIFT
    drive_amplitude: float = 1.5
    rise_tau: float = device.CARRIER_TAU
    fall_tau: float = device.CARRIER_TAU
    input_power: float = 5.0
    bit_rate: float = 10.0
    samples_per_bit: int = 64
    n_bits: int = 256
    skip_bits: int = 8
    prbs_order: int = 7
    seed_x: int = 0x01
    seed_w: int = 0x55
    seed: int = 0
    output_dir: str = "out"

    def __post_init__(self) -> None:
        # construct owned types once so their invariants are enforced here
        self.ring_params()
        self.tuner()
        self.shifter()

    def ring_params(self) -> RingParams:
        return device.fit_ring_params(
            self.fwhm,
            self.peak_drop,
            self.fsr,
            self.wavelength,
            self.group_index,
            self.wavelength + self.base_offset,
        )

    def tuner(self) -> ThermalTuner:
        return ThermalTuner(self.heater_efficiency, self.heater_max_power)

    def shifter(self) -> CarrierShifter:
        return CarrierShifter(self.blueshift, self.drive_amplitude, self.rise_tau, self.fall_tau)

    def program(self, gate) -> GateProgram:
        return device.program_for(gate, self.wavelength, self.tuner(), self.wavelength + self.base_offset)

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)

    def dumps(self) -> str:
        lines = ["# ringlogic run configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            text = f"{f.name} = {value!r}" if isinstance(value, float) else f"{f.name} = {value}"
            unit = _UNITS.get(f.name)
            lines.append(f"{text:<34}# {unit}" if unit else text)
        return "\n".join(lines) + "\n"


def loads(text: str, source: str = "<config>") -> RunConfig:
    """Parse config text; unknown keys and bad values name the line."""
    types = {f.name: f.type for f in fields(RunConfig)}
    casts = {"float": float, "int": int, "str": str}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in types:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = casts[types[key]](value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: {key} expects {types[key]}, got {value!r}") from None
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    path = Path(path)
    return loads(path.read_text(), str(path))


def save(config: RunConfig, path: str | Path, backup: bool = True) -> Path | None:
    """Write ``config`` to ``path``; an existing file is kept as ``<path>.bak``."""
    path = Path(path)
    bak = None
    if backup and path.exists():
        bak = path.with_suffix(path.suffix + ".bak")
        bak.write_text(path.read_text())
    path.write_text(config.dumps())
    return bak
