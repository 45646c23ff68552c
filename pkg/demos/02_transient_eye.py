# %% [markdown]
# # Gates in the time domain
#
# Operands arrive as NRZ voltage streams. Carriers respond with a single
# time constant and the cavity adds a photon-lifetime low-pass. Eye quality
# is judged by the OMA: weakest logic 1 minus strongest logic 0, sampled at
# bit centers after a short settling window.

# %%
from ringlogic import CarrierShifter, Gate, fit_ring_params, program_for
from ringlogic.transient import bit_centers, expected_output, nrz_drive, prbs, prbs_oma, simulate_transient

params = fit_ring_params()
shifter = CarrierShifter()
print(f"carrier tau {shifter.rise_tau} ps, drive {shifter.drive_amplitude} V")

# %% [markdown]
# ## A short AND trace at 10 Gb/s and 5 dBm

# %%
xb, wb = prbs(7, 1, 16).bits, prbs(7, 0x55, 16).bits
dx = nrz_drive(xb, 10.0, shifter.drive_amplitude)
dw = nrz_drive(wb, 10.0, shifter.drive_amplitude)
out = simulate_transient(params, program_for(Gate.AND), shifter, dx, dw, input_power=5.0)
centers = out["drop"].samples[bit_centers(16, 64)]
for x, w, want, v in zip(xb, wb, expected_output(Gate.AND, "drop", xb, wb), centers):
    print(f"x={x} w={w} -> {want}   drop {v:.3f} mW")

# %% [markdown]
# ## OMA against bit-rate
#
# Faster bits leave the carriers less time to settle, so the eye closes.

# %%
for rate in (10, 20, 30, 40, 50, 60):
    m = prbs_oma(params, program_for(Gate.AND), shifter, "drop", float(rate), input_power=5.0)
    print(f"{rate:>3} Gb/s  OMA {m.oma_mw:.4f} mW  ({m.oma_dbm:.2f} dBm)")
