"""Area / energy-per-bit / latency bookkeeping for E-O circuits."""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType


@dataclass(frozen=True)
class CircuitCost:
    area: float  # mm^2
    energy_per_bit: float  # nJ
    latency: float  # ns
    label: str = ""

    def __post_init__(self) -> None:
        if min(self.area, self.energy_per_bit, self.latency) <= 0:
            raise ValueError(f"cost metrics must be strictly positive: {self}")


@dataclass(frozen=True)
class CostComparison:
    baseline: CircuitCost
    variant: CircuitCost
    area_ratio: float
    energy_ratio: float
    latency_ratio: float
    ael_ratio: float


def ael_product(cost: CircuitCost) -> float:
    """Area x energy x latency [mm^2 nJ ns]."""
    return cost.area * cost.energy_per_bit * cost.latency


def compare_costs(baseline: CircuitCost, variant: CircuitCost) -> CostComparison:
    """Improvement factors of ``variant`` over ``baseline`` (>1 means better)."""
    return CostComparison(
        baseline,
        variant,
        baseline.area / variant.area,
        baseline.energy_per_bit / variant.energy_per_bit,
        baseline.latency / variant.latency,
        ael_product(baseline) / ael_product(variant),
    )


# Published comparison: (baseline, ring-gate variant, printed A*E*L pair, printed ratio).
TABLE2 = MappingProxyType(
    {
        "XNOR-POPCOUNT": {
            "baseline": CircuitCost(0.013, 0.05, 0.02, "XNOR-POPCOUNT baseline"),
            "variant": CircuitCost(0.011, 0.032, 0.025, "XNOR-POPCOUNT ring gate"),
            "ael": (1.3e-5, 0.9e-5),
            "ael_ratio": 1.44,
        },
        "Bit-serial Multiplier": {
            "baseline": CircuitCost(0.023, 0.327, 0.1, "bit-serial multiplier baseline"),
            "variant": CircuitCost(0.011, 0.033, 0.025, "bit-serial multiplier ring gate"),
            "ael": (75.2e-5, 0.91e-5),
            "ael_ratio": 82.6,
        },
    }
)


def table2_rows() -> list[dict]:
    """Recomputed comparison rows alongside the printed values."""
    rows = []
    for name, entry in TABLE2.items():
        cmp = compare_costs(entry["baseline"], entry["variant"])
        rows.append(
            {
                "circuit": name,
                "baseline_ael": ael_product(entry["baseline"]),
                "variant_ael": ael_product(entry["variant"]),
                "printed_baseline_ael": entry["ael"][0],
                "printed_variant_ael": entry["ael"][1],
                "area_ratio": cmp.area_ratio,
                "energy_ratio": cmp.energy_ratio,
                "latency_ratio": cmp.latency_ratio,
                "ael_ratio": cmp.ael_ratio,
                "printed_ael_ratio": entry["ael_ratio"],
            }
        )
    return rows


@dataclass(frozen=True)
class GateBudget:
    area: float  # mm^2 per gate
    static_power: float  # mW per gate, heater plus receiver static
    laser_power: float  # mW per gate

    @property
    def power(self) -> float:
        return self.static_power + self.laser_power


def estimate_circuit_cost(
    gate_count: int,
    per_gate: GateBudget,
    bit_rate: float,
    fixed_overhead: CircuitCost | None = None,
    label: str = "estimate",
) -> CircuitCost:
    """Gate-count based cost; serialization energy is not modelled.

    ``energy_per_bit = total_power / bit_rate`` with mW / (Gb/s) = pJ, and
    ``latency = 1 / bit_rate`` ns, each plus the fixed overhead if given.
    """
    if bit_rate <= 0:
        raise ValueError("bit_rate must be positive")
    if gate_count <= 0:
        raise ValueError("gate_count must be positive")
    area = gate_count * per_gate.area
    energy = gate_count * per_gate.power / bit_rate * 1e-3
    latency = 1.0 / bit_rate
    if fixed_overhead is not None:
        area += fixed_overhead.area
        energy += fixed_overhead.energy_per_bit
        latency += fixed_overhead.latency
    return CircuitCost(area, energy, latency, label)


def fit_gate_budget(target: CircuitCost, gate_count: int, bit_rate: float, static_power: float) -> GateBudget:
    """Per-gate area and laser power that reproduce ``target`` with no overhead."""
    total_mw = target.energy_per_bit * 1e3 * bit_rate
    laser = total_mw / gate_count - static_power
    if laser <= 0:
        raise ValueError("static power alone exceeds the target energy per bit")
    return GateBudget(target.area / gate_count, static_power, laser)
