"""Maximum bit-rate search, operating-condition grids, and tau calibration."""
from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .device import (
    DEFAULT_PEAK_DROP,
    CarrierShifter,
    GateProgram,
    RingParams,
    fit_ring_params,
    program_for,
    resolve_function,
)
from .transient import prbs_oma

RATE_BOUNDS = (1, 100)  # Gb/s
POWER_AXIS = tuple(float(p) for p in range(-5, 6))  # dBm
SOMA_AXIS = tuple(float(s) for s in range(-5, -21, -1))  # dBm
FWHM_LIST = (0.8, 1.0, 1.2, 1.4, 1.6)

ANCHOR = {"function": "AND", "input_power": 5.0, "soma": -5.0, "fwhm": 1.2, "bit_rate": 42}

# Reported maximum bit-rate per function and the (power dBm, SOMA dBm) corner
# of the region over which each value is claimed to hold.
REPORTED_MAXIMA = {"AND": 42, "OR": 41, "XOR": 40, "NAND": 40, "NOR": 40, "XNOR": 41}
SATURATION_CORNERS = {
    "AND": (5.0, -5.0),
    "OR": (-5.0, -20.0),
    "XOR": (-5.0, -20.0),
    "NAND": (5.0, -5.0),
    "NOR": (-5.0, -12.0),
    "XNOR": (-5.0, -12.0),
}


class CalibrationError(RuntimeError):
    pass


@functools.lru_cache(maxsize=None)
def reference_oma(
    params: RingParams, program: GateProgram, shifter: CarrierShifter, port: str, bit_rate: int
) -> float:
    """PRBS-7 OMA [mW] at 0 dBm input. Output power is linear in input power."""
    return prbs_oma(params, program, shifter, port, float(bit_rate), input_power=0.0).oma_mw


def _passes(params, program, shifter, port, rate, input_power, soma) -> bool:
    oma = reference_oma(params, program, shifter, port, rate) * 10.0 ** (input_power / 10.0)
    return oma > 0 and 10.0 * math.log10(oma) >= soma


def _params_for(params: RingParams | None, fwhm: float | None) -> RingParams:
    if params is None:
        return fit_ring_params(fwhm_target=fwhm or ANCHOR["fwhm"])
    if fwhm is not None and not math.isclose(params.fwhm, fwhm, rel_tol=1e-9):
        return fit_ring_params(
            fwhm_target=fwhm,
            peak_drop_target=params.peak_drop,
            fsr_target=params.fsr,
            reference_wavelength=params.reference_wavelength,
            group_index=params.group_index,
            base_resonance=params.base_resonance,
        )
    return params


def max_bitrate(
    program: GateProgram,
    port: str,
    input_power: float,
    soma: float,
    fwhm: float | None = None,
    shifter: CarrierShifter | None = None,
    params: RingParams | None = None,
    bounds: tuple[int, int] = RATE_BOUNDS,
) -> int:
    """Largest integer bit-rate [Gb/s] whose OMA meets ``soma``; 0 if none does.

    Bisection assumes OMA degrades monotonically with bit-rate.
    """
    params = _params_for(params, fwhm)
    shifter = shifter or default_shifter()
    lo, hi = bounds
    ok = functools.partial(_passes, params, program, shifter, port, input_power=input_power, soma=soma)
    if not ok(rate=lo):
        return 0
    if ok(rate=hi):
        return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(rate=mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class SweepGrid:
    power_axis: np.ndarray  # dBm
    soma_axis: np.ndarray  # dBm
    function: str
    port: str
    cells: np.ndarray  # Gb/s, shape (len(power_axis), len(soma_axis))

    def monotonicity_violations(self) -> int:
        """Count of adjacent-cell decreases along rising power or falling SOMA."""
        c = self.cells
        p_order = np.argsort(self.power_axis)
        s_order = np.argsort(-self.soma_axis)
        c = c[p_order][:, s_order]
        return int((np.diff(c, axis=0) < 0).sum() + (np.diff(c, axis=1) < 0).sum())


def _grid_row(args):
    program, port, power, soma_axis, fwhm, shifter, params = args
    return [max_bitrate(program, port, power, s, fwhm, shifter, params) for s in soma_axis]


def sweep_grid(
    function: str,
    power_axis=POWER_AXIS,
    soma_axis=SOMA_AXIS,
    fwhm: float | None = None,
    shifter: CarrierShifter | None = None,
    params: RingParams | None = None,
    workers: int = 1,
) -> SweepGrid:
    """Max bit-rate over the (input power x SOMA) grid for one named function.

    ``workers > 1`` distributes power rows over processes; the result is
    identical to the sequential run.
    """
    power_axis = np.asarray(power_axis, dtype=float)
    soma_axis = np.asarray(soma_axis, dtype=float)
    if power_axis.size == 0 or soma_axis.size == 0:
        raise ValueError("sweep axes must be nonempty")
    gate, port = resolve_function(function)
    params = _params_for(params, fwhm)
    shifter = shifter or default_shifter()
    program = program_for(gate, params.reference_wavelength, base_resonance=params.base_resonance)
    jobs = [(program, port, float(p), tuple(soma_axis), None, shifter, params) for p in power_axis]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_grid_row, jobs))
    else:
        rows = [_grid_row(j) for j in jobs]
    return SweepGrid(power_axis, soma_axis, function.upper(), port, np.array(rows, dtype=int))


def fwhm_sweep(
    functions=("AND", "OR", "XOR", "NAND", "NOR", "XNOR"),
    fwhm_list=FWHM_LIST,
    input_power: float = 0.0,
    soma: float = -5.0,
    shifter: CarrierShifter | None = None,
    peak_drop: float = DEFAULT_PEAK_DROP,
) -> dict[tuple[str, float], int]:
    """Max bit-rate per (function, FWHM), refitting the ring at fixed peak drop."""
    fwhm_list = list(fwhm_list)
    if any(f <= 0 for f in fwhm_list) or fwhm_list != sorted(fwhm_list):
        raise ValueError("fwhm_list must be positive and sorted")
    out = {}
    for fw in fwhm_list:
        params = fit_ring_params(fwhm_target=fw, peak_drop_target=peak_drop)
        for name in functions:
            gate, port = resolve_function(name)
            program = program_for(gate, params.reference_wavelength)
            out[(name.upper(), fw)] = max_bitrate(program, port, input_power, soma, shifter=shifter, params=params)
    return out


def saturated_maxima(
    shifter: CarrierShifter | None = None, params: RingParams | None = None
) -> dict[str, int]:
    """Max bit-rate of each function at its saturation corner."""
    params = _params_for(params, None)
    out = {}
    for name, (power, soma) in SATURATION_CORNERS.items():
        gate, port = resolve_function(name)
        program = program_for(gate, params.reference_wavelength, base_resonance=params.base_resonance)
        out[name] = max_bitrate(program, port, power, soma, shifter=shifter, params=params)
    return out


def _anchor_rate(tau: float, params: RingParams, base: CarrierShifter, anchor: dict) -> int:
    gate, port = resolve_function(anchor["function"])
    program = program_for(gate, params.reference_wavelength, base_resonance=params.base_resonance)
    shifter = replace(base, rise_tau=tau, fall_tau=tau)
    return max_bitrate(program, port, anchor["input_power"], anchor["soma"], shifter=shifter, params=params)


def calibrate_tau(
    anchor: dict | None = None,
    params: RingParams | None = None,
    base: CarrierShifter | None = None,
    tau_range: tuple[float, float] = (0.1, 100.0),
    resolution: float = 0.01,
) -> CarrierShifter:
    """Carrier time constant (rise = fall) that reproduces the anchor bit-rate.

    The anchor rate is non-increasing in tau, so the taus that reproduce it
    form an interval. Both ends are bisected to ``resolution`` and the
    midpoint is returned.
    """
    anchor = {**ANCHOR, **(anchor or {})}
    params = _params_for(params, anchor["fwhm"])
    base = base or CarrierShifter()
    target = int(anchor["bit_rate"])
    rate = functools.partial(_anchor_rate, params=params, base=base, anchor=anchor)

    lo, hi = tau_range
    if rate(lo) < target or rate(hi) > target:
        raise CalibrationError(f"anchor {target} Gb/s unreachable for tau in {tau_range} ps")

    def last_tau_reaching(goal: int) -> float:
        a, b = lo, hi  # rate(a) >= goal > rate(b)
        if rate(b) >= goal:
            return b
        while b - a > resolution:
            m = 0.5 * (a + b)
            if rate(m) >= goal:
                a = m
            else:
                b = m
        return a

    upper = last_tau_reaching(target)
    lower = last_tau_reaching(target + 1)
    tau = round(0.5 * (lower + upper), 3)
    if rate(tau) != target:
        raise CalibrationError(f"no tau in {tau_range} ps gives exactly {target} Gb/s")
    return replace(base, rise_tau=tau, fall_tau=tau)


def default_shifter() -> CarrierShifter:
    return CarrierShifter()
