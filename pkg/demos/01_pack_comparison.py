"""
Three packs, one charger
========================

The same 828-cell budget can be wired 92S9P (the stock layout), 46S18P
(shorter strings, more of them), or 142S5P (longer strings, fewer of them --
using 710 of the cells). At a fixed 15 A charging current the charge time
scales with the number of parallel strings, so the long-string pack fills
almost twice as fast as stock and four times faster than the short-string
variant.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from packsim import (
    TESLA_MODEL_Y_CELL,
    PackConfig,
    charge_time,
    pack_capacity,
    pack_mass,
    pack_nominal_voltage,
    paper_profile,
    simulate,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

layouts = [(92, 9), (46, 18), (142, 5)]
profile = paper_profile(i_charge=15.0)

runs = []
print(f"{'config':>8}  {'capacity':>10}  {'nominal':>9}  {'mass':>9}  {'charge time':>12}")
for s, p in layouts:
    pack = PackConfig(s=s, p=p, cell=TESLA_MODEL_Y_CELL)
    series = simulate(pack, profile, duration=48 * 3600.0, dt=1.0)
    t = charge_time(series)
    runs.append((pack, series, t))
    print(
        f"{pack.layout:>8}  {pack_capacity(pack):>7.2f} Ah  "
        f"{pack_nominal_voltage(pack):>7.1f} V  {pack_mass(pack):>6.1f} kg  {t:>10.2f} h"
    )

# Full 48 h trajectories, one trace per pack (SOC, voltage, current).
fig, axes = plt.subplots(3, 1, figsize=(9, 9), sharex=True)
for pack, series, _ in runs:
    t_h = series.times() / 3600.0
    axes[0].plot(t_h, series.soc * 100, label=pack.layout)
    axes[1].plot(t_h, series.voltage_v, label=pack.layout)
    axes[2].plot(t_h, series.current_a, label=pack.layout)
axes[0].set_ylabel("SOC [%]")
axes[1].set_ylabel("Pack voltage [V]")
axes[2].set_ylabel("Pack current [A]")
axes[2].set_xlabel("Time [h]")
axes[0].legend()
fig.tight_layout()
fig.savefig(OUT / "pack_comparison_traces.svg")

# The headline numbers as a bar chart.
fig, ax = plt.subplots(figsize=(6, 4))
names = [pack.layout for pack, _, _ in runs]
hours = [t for _, _, t in runs]
bars = ax.bar(names, hours, color=["C0", "C1", "C2"])
ax.bar_label(bars, fmt="%.1f h")
ax.set_ylabel("Time to full charge [h]")
ax.set_title("Charge time at 15 A")
fig.tight_layout()
fig.savefig(OUT / "pack_comparison_times.svg")
print(f"\nwrote {OUT / 'pack_comparison_traces.svg'}")
print(f"wrote {OUT / 'pack_comparison_times.svg'}")
