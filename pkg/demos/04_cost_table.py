# %% [markdown]
# # Area, energy and latency
#
# Circuits are compared by the product of area, energy per bit and latency.
# The published comparison ships as a read-only fixture. A separate
# gate-count estimator rebuilds the ring-gate columns from a per-gate budget.

# %%
from ringlogic.costmodel import TABLE2, GateBudget, estimate_circuit_cost, fit_gate_budget, table2_rows

for row in table2_rows():
    print(f"{row['circuit']:<22} baseline {row['baseline_ael']:.3g} (printed {row['printed_baseline_ael']:.3g})  "
          f"ring {row['variant_ael']:.3g} (printed {row['printed_variant_ael']:.3g})  "
          f"ratio {row['ael_ratio']:.3g} (printed {row['printed_ael_ratio']})")

# %% [markdown]
# ## Estimator
#
# One gate at 40 Gb/s. The laser power is fitted so the energy per bit
# matches the fixture; the static figure is an assumption.

# %%
budget = fit_gate_budget(TABLE2["XNOR-POPCOUNT"]["variant"], gate_count=1, bit_rate=40.0, static_power=3.56)
print(f"fitted laser power {budget.laser_power:.2f} mW per gate")
for n in (1, 8, 64):
    c = estimate_circuit_cost(n, GateBudget(0.011, 3.56, budget.laser_power), 40.0)
    print(f"{n:>3} gates: {c.area:.3f} mm^2, {c.energy_per_bit:.3f} nJ/bit, {c.latency:.3f} ns")
