"""Enumerate and rank SxP configurations of a cell budget by charge time.

At a fixed charging current, charge time scales with the number of parallel
strings (time = p * C_cell / (I * eta)), so fewer-parallel/more-series
configurations charge faster. The planner makes that trade explicit: it
enumerates candidate configurations, filters them against charger
constraints, predicts charge times analytically, and can re-check the top
candidates with full simulations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cell import CellSpec
from .control import ChargerProfile
from .engine import charge_time, simulate
from .topology import PackConfig, enumerate_factorizations, pack_nominal_voltage


@dataclass(frozen=True)
class PlannerConstraints:
    """Charger-side limits a candidate configuration must respect.

    ``i_max`` is the available charging current. ``v_max``, when given, caps
    the pack CV voltage (s * v_cv); ``power_max`` caps supply power and
    derates the usable current on high-voltage packs. When
    ``require_cell_conservation`` is False the planner also considers
    configurations that leave part of the cell budget unused.
    """

    i_max: float
    v_max: float | None = None
    power_max: float | None = None
    require_cell_conservation: bool = True

    def __post_init__(self):
        if self.i_max <= 0:
            raise ValueError(f"i_max must be > 0, got {self.i_max}")
        if self.v_max is not None and self.v_max <= 0:
            raise ValueError(f"v_max must be > 0, got {self.v_max}")
        if self.power_max is not None and self.power_max <= 0:
            raise ValueError(f"power_max must be > 0, got {self.power_max}")


@dataclass(frozen=True)
class PlanEntry:
    s: int
    p: int
    predicted_hours: float | None
    feasible: bool
    infeasibility_reason: str | None = None

    @property
    def cells_used(self) -> int:
        return self.s * self.p


@dataclass
class RankedPlan:
    """Candidate configurations: feasible entries first, fastest first."""

    n_cells: int
    cell: CellSpec
    entries: list[PlanEntry] = field(default_factory=list)

    @property
    def feasible_entries(self) -> list[PlanEntry]:
        return [e for e in self.entries if e.feasible]

    @property
    def best(self) -> PlanEntry | None:
        feas = self.feasible_entries
        return feas[0] if feas else None


@dataclass(frozen=True)
class VerifiedEntry:
    s: int
    p: int
    predicted_hours: float
    simulated_hours: float | None

    @property
    def relative_delta(self) -> float | None:
        if self.simulated_hours is None or self.simulated_hours == 0:
            return None
        return abs(self.simulated_hours - self.predicted_hours) / self.simulated_hours


def effective_current(config: PackConfig, constraints: PlannerConstraints) -> float:
    """Usable charging current: i_max, derated by the power ceiling if any."""
    i_eff = constraints.i_max
    if constraints.power_max is not None:
        i_eff = min(i_eff, constraints.power_max / pack_nominal_voltage(config))
    return i_eff


def predict_charge_time(
    config: PackConfig, profile: ChargerProfile, constraints: PlannerConstraints
) -> float:
    """Analytical full-charge time in hours: p * C / (i_eff * eta).

    Exact in cc_only mode; a lower bound under CV taper. Raises ValueError if
    no usable current remains under the constraints.
    """
    i_eff = effective_current(config, constraints)
    if i_eff <= 0:
        raise ValueError(
            f"infeasible: no usable charging current for {config.layout} "
            f"under the given constraints"
        )
    return config.p * config.cell.capacity / (i_eff * profile.eta_charge)


def _candidates(n_cells: int, conserve: bool) -> list[tuple[int, int]]:
    pairs = enumerate_factorizations(n_cells)
    if conserve:
        return pairs
    # Non-conserving candidates: for every series length, as many full
    # strings as the budget allows (e.g. 828 cells -> 142S5P, dropping 118).
    seen = set(pairs)
    for s in range(1, n_cells + 1):
        pair = (s, n_cells // s)
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    pairs.sort()
    return pairs


def rank(
    n_cells: int,
    cell: CellSpec,
    profile: ChargerProfile,
    constraints: PlannerConstraints,
) -> RankedPlan:
    """Rank candidate configurations of ``n_cells`` by predicted charge time.

    Feasible entries come first, ascending by predicted time with ties broken
    by smaller s (lower voltage at equal speed); infeasible entries follow
    with their reasons.
    """
    feasible: list[PlanEntry] = []
    infeasible: list[PlanEntry] = []
    for s, p in _candidates(n_cells, constraints.require_cell_conservation):
        config = PackConfig(s=s, p=p, cell=cell)
        if constraints.v_max is not None:
            v_pack_cv = s * cell.v_cv
            if v_pack_cv > constraints.v_max:
                infeasible.append(
                    PlanEntry(
                        s,
                        p,
                        predicted_hours=None,
                        feasible=False,
                        infeasibility_reason=(
                            f"voltage ceiling: {s} x {cell.v_cv:g} V = "
                            f"{v_pack_cv:g} V > v_max {constraints.v_max:g} V"
                        ),
                    )
                )
                continue
        hours = predict_charge_time(config, profile, constraints)
        feasible.append(PlanEntry(s, p, predicted_hours=hours, feasible=True))

    feasible.sort(key=lambda e: (e.predicted_hours, e.s))
    infeasible.sort(key=lambda e: e.s)
    return RankedPlan(n_cells=n_cells, cell=cell, entries=feasible + infeasible)


def verify_rank(
    plan: RankedPlan,
    profile: ChargerProfile,
    constraints: PlannerConstraints,
    top_k: int = 3,
    dt: float = 1.0,
) -> list[VerifiedEntry]:
    """Re-simulate the top feasible entries and report prediction deltas.

    Each candidate is charged from empty at its effective current with
    cycling disabled; ``simulated_hours`` is ``None`` when the run does not
    reach full charge within twice the predicted time.
    """
    report: list[VerifiedEntry] = []
    for entry in plan.feasible_entries[:top_k]:
        config = PackConfig(s=entry.s, p=entry.p, cell=plan.cell)
        i_eff = effective_current(config, constraints)
        run_profile = ChargerProfile(
            i_charge=i_eff,
            i_discharge=0.0,
            mode=profile.mode,
            i_cutoff=profile.i_cutoff,
            soc_high=1.0,
            soc_low=0.0,
            eta_charge=profile.eta_charge,
        )
        duration = max(2.0 * entry.predicted_hours * 3600.0, 10.0 * dt)
        series = simulate(config, run_profile, duration, dt=dt, initial_soc=0.0)
        report.append(
            VerifiedEntry(
                s=entry.s,
                p=entry.p,
                predicted_hours=entry.predicted_hours,
                simulated_hours=charge_time(series),
            )
        )
    return report
