"""
48 hours on the cycling bench
=============================

With the relay thresholds at 0% and 100%, the bench alternates full charges
and full discharges for as long as the run lasts. The 142S5P pack completes
five relay toggles in 48 hours; charge legs take longer than discharge legs
because only charging pays the charge-acceptance penalty.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from packsim import (
    TESLA_MODEL_Y_CELL,
    PackConfig,
    cycle_events,
    pack_capacity,
    paper_profile,
    simulate,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

pack = PackConfig(s=142, p=5, cell=TESLA_MODEL_Y_CELL)
profile = paper_profile(i_charge=15.0)
series = simulate(pack, profile, duration=48 * 3600.0, dt=1.0)

toggles = cycle_events(series)
cap = pack_capacity(pack)
print(f"pack: {pack.layout}, {cap:.2f} Ah")
print(f"charge leg:    {cap / (15.0 * profile.eta_charge):6.3f} h (closed form)")
print(f"discharge leg: {cap / 15.0:6.3f} h (closed form)")
print(f"relay toggles: {len(toggles)} at " + ", ".join(f"{t:.2f} h" for t in toggles))

t_h = series.times() / 3600.0
fig, (ax_soc, ax_i) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
ax_soc.plot(t_h, series.soc * 100, color="C0")
for t in toggles:
    ax_soc.axvline(t, color="k", alpha=0.3, lw=0.8)
ax_soc.set_ylabel("SOC [%]")
ax_soc.set_title(f"{pack.layout} cycling at 15 A")
ax_i.plot(t_h, series.current_a, color="C2")
ax_i.set_ylabel("Pack current [A]")
ax_i.set_xlabel("Time [h]")
fig.tight_layout()
fig.savefig(OUT / "cycling_48h.svg")
print(f"\nwrote {OUT / 'cycling_48h.svg'}")
