"""
Anatomy of a CC-CV charge
=========================

A real charger holds constant current only until the pack voltage reaches its
ceiling, then holds constant voltage while the current tapers. This demo
charges the stock 92S9P pack at 30 A in cc_cv mode and marks the CC-to-CV
handover and the C/20 termination point on the trajectory.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from packsim import (
    TESLA_MODEL_Y_CELL,
    ChargerProfile,
    PackConfig,
    charge_time,
    pack_capacity,
    simulate,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

pack = PackConfig(s=92, p=9, cell=TESLA_MODEL_Y_CELL)
profile = ChargerProfile(
    i_charge=30.0,
    i_discharge=0.0,   # charge once, no cycling
    mode="cc_cv",      # i_cutoff defaults to C/20 of the pack
)
series = simulate(pack, profile, duration=10 * 3600.0, dt=1.0, initial_soc=0.0)

print(f"pack capacity:   {pack_capacity(pack):.2f} Ah")
print(f"charge complete: {charge_time(series):.3f} h")
for ev in series.events:
    print(f"  event at {ev.t / 3600.0:7.3f} h: {ev.kind.value}")

t_h = series.times() / 3600.0
fig, axes = plt.subplots(3, 1, figsize=(8, 8), sharex=True)
axes[0].plot(t_h, series.soc * 100, color="C0")
axes[0].set_ylabel("SOC [%]")
axes[1].plot(t_h, series.voltage_v, color="C1")
axes[1].axhline(pack.s * pack.cell.v_cv, ls="--", color="gray", lw=0.8, label="CV ceiling")
axes[1].set_ylabel("Pack voltage [V]")
axes[1].legend(loc="lower right")
axes[2].plot(t_h, series.current_a, color="C2")
axes[2].set_ylabel("Pack current [A]")
axes[2].set_xlabel("Time [h]")

for ev in series.events:
    label = ev.kind.value.replace("_", " ")
    for ax in axes:
        ax.axvline(ev.t / 3600.0, color="k", alpha=0.25, lw=0.8)
    axes[0].annotate(
        label,
        (ev.t / 3600.0, 50),
        rotation=90, fontsize=7, ha="right", va="center",
    )

fig.tight_layout()
fig.savefig(OUT / "cc_cv_charge.svg")
print(f"\nwrote {OUT / 'cc_cv_charge.svg'}")
