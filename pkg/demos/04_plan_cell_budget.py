"""
Planning a cell budget
======================

Given 828 cells and a 15 A charger, which SxP wiring charges fastest? With no
other limits the answer is always "all of them in one string" -- charge time
is proportional to the parallel count. Real chargers have voltage and power
ceilings, so the planner also shows what survives a 420 V charger, and how a
power ceiling erases the advantage of long strings.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from packsim import (
    TESLA_MODEL_Y_CELL,
    PlannerConstraints,
    paper_profile,
    rank,
    verify_rank,
)

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

cell = TESLA_MODEL_Y_CELL
profile = paper_profile(i_charge=15.0)


def show(plan, title, top=6):
    print(f"\n{title}")
    for e in plan.entries[:top]:
        if e.feasible:
            print(f"  {e.s:>4}S{e.p}P  {e.predicted_hours:8.2f} h")
        else:
            print(f"  {e.s:>4}S{e.p}P  infeasible ({e.infeasibility_reason})")


# Unconstrained: every factorization of 828 is allowed.
free = rank(828, cell, profile, PlannerConstraints(i_max=15.0))
show(free, "unconstrained (fastest first):")

# A 420 V wall charger cannot handle strings past 100 cells.
capped = rank(828, cell, profile, PlannerConstraints(i_max=15.0, v_max=420.0))
show(capped, "with a 420 V ceiling:")

# A power ceiling derates current on high-voltage packs: at 3 kW the long
# strings can no longer draw the full 15 A and the ranking compresses.
powered = rank(
    828, cell, profile, PlannerConstraints(i_max=15.0, v_max=420.0, power_max=3000.0)
)
show(powered, "with 420 V and 3 kW ceilings:")

# Sanity: re-simulate the winners; cc_only predictions are exact.
print("\nverification of the top three (420 V plan):")
for v in verify_rank(capped, profile, PlannerConstraints(i_max=15.0, v_max=420.0), top_k=3):
    print(
        f"  {v.s}S{v.p}P  predicted {v.predicted_hours:.4f} h  "
        f"simulated {v.simulated_hours:.4f} h  delta {v.relative_delta:.2e}"
    )

# Feasible charge times against series count, with and without the ceiling.
fig, ax = plt.subplots(figsize=(7, 4.5))
for plan, marker, label in [(free, "o", "no limits"), (capped, "s", "420 V ceiling")]:
    xs = [e.s for e in plan.feasible_entries]
    ys = [e.predicted_hours for e in plan.feasible_entries]
    ax.plot(xs, ys, marker, ms=5, label=label, alpha=0.8)
ax.set_xscale("log")
ax.set_yscale("log")
ax.set_xlabel("cells in series (s)")
ax.set_ylabel("predicted charge time [h]")
ax.set_title("828-cell budget at 15 A")
ax.legend()
ax.grid(True, which="both", alpha=0.3)
fig.tight_layout()
fig.savefig(OUT / "plan_cell_budget.svg")
print(f"\nwrote {OUT / 'plan_cell_budget.svg'}")
