# %% [markdown]
# # How fast can each gate run?
#
# The maximum bit-rate is the fastest integer rate whose OMA still clears a
# receiver sensitivity (SOMA). The carrier time constant is the one unknown,
# so it is fitted once: AND on the drop port at 5 dBm input and -5 dBm SOMA
# must top out at exactly 42 Gb/s.

# %%
from ringlogic import fit_ring_params
from ringlogic.sweep import REPORTED_MAXIMA, calibrate_tau, fwhm_sweep, saturated_maxima, sweep_grid

params = fit_ring_params()
shifter = calibrate_tau(params=params)
print(f"calibrated carrier tau {shifter.rise_tau} ps")

# %% [markdown]
# ## Maxima at each function's saturation corner
#
# Only the anchor is fitted. The other five numbers are predictions.

# %%
for name, rate in saturated_maxima(shifter, params).items():
    print(f"{name:<5} {rate:3d} Gb/s   reported {REPORTED_MAXIMA[name]}")

# %% [markdown]
# ## The AND grid over input power and SOMA
#
# Rows run from -5 to 5 dBm input. Columns run from -5 to -20 dBm SOMA.

# %%
grid = sweep_grid("AND", params=params, shifter=shifter)
print("power  " + " ".join(f"{s:>4g}" for s in grid.soma_axis))
for p, row in zip(grid.power_axis, grid.cells):
    print(f"{p:>5g}  " + " ".join(f"{v:>4d}" for v in row))
print("monotonicity violations:", grid.monotonicity_violations())

# %% [markdown]
# ## Passband width
#
# At 0 dBm and -5 dBm SOMA, widening the passband lowers every DC level
# along with the photon lifetime. In this model the OMA loss wins.

# %%
rates = fwhm_sweep(shifter=shifter)
for (name, fw), r in sorted(rates.items()):
    print(f"{name:<5} FWHM {fw:.1f} nm -> {r} Gb/s")
