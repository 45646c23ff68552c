# %% [markdown]
# # One ring, three logic functions
#
# A single add-drop microring acts as a two-input gate. A heater parks the
# resonance a little red of the laser; each driven operand pulls it back
# by 0.35 nm through carrier injection. How far the heater parks it decides
# which input pairs land the resonance on the laser, and so which function
# the drop port computes. The through port always gives the complement.

# %%
import numpy as np

from ringlogic import Gate, dc_truth_table, fit_ring_params, program_for, spectrum

params = fit_ring_params()  # 1.2 nm FWHM, 0.82 peak drop, 9.66 nm FSR
print(f"self-coupling t = {params.self_coupling_1:.6f}, round-trip amplitude a = {params.round_trip_amplitude:.6f}")
print(f"round-trip length {params.round_trip_length:.2f} um, photon lifetime {params.photon_lifetime:.3f} ps")

# %% [markdown]
# ## Heater programs
#
# Detuning is the distance between the operand-free resonance and the laser.

# %%
for gate in Gate:
    p = program_for(gate)
    print(f"{gate.value:<4} detuning {p.programmed_detuning:.1f} nm, heater {p.heater_power:.3f} mW")

# %% [markdown]
# ## Where the resonance sits for each operand pair
#
# For AND the resonance only reaches the laser when both inputs are driven.

# %%
prog = program_for(Gate.AND)
for x, w in [(0, 0), (0, 1), (1, 1)]:
    s = spectrum(params, prog, x, w)
    i = np.argmin(np.abs(s.wavelengths - 1545.0))
    print(f"({x},{w}) peak at {s.peak_wavelength:.2f} nm, drop at laser {s.drop[i]:.3f}")

# %% [markdown]
# ## DC truth tables
#
# A port is valid when its lowest logic-1 level sits above its highest
# logic-0 level. That gap is the DC separation.

# %%
for gate in Gate:
    t = dc_truth_table(params, program_for(gate))
    drop = " ".join(f"{v:.3f}" for v in t.levels("drop"))
    print(f"{gate.value:<4} drop [{drop}] bits {t.bits('drop')}  "
          f"separation drop {t.dc_oma['drop']:.3f}, through {t.dc_oma['through']:.3f}")
