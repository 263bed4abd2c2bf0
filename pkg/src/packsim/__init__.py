"""packsim: battery pack charge simulation and SxP configuration planning.

Quick start::

    from packsim import PackConfig, TESLA_MODEL_Y_CELL, paper_profile, simulate, charge_time

    pack = PackConfig(s=92, p=9, cell=TESLA_MODEL_Y_CELL)
    series = simulate(pack, paper_profile(15.0), duration=48 * 3600.0)
    print(charge_time(series))  # hours to full charge
"""

from .cell import (
    DEFAULT_OCV_TABLE,
    TESLA_MODEL_Y_CELL,
    CellSpec,
    nominal_voltage,
    ocv,
    terminal_voltage,
)
from .control import (
    PAPER_ETA,
    ChargeMode,
    ChargerProfile,
    Phase,
    RelayState,
    cc_cv_command,
    commanded_current,
    paper_profile,
    relay_step,
)
from .engine import (
    Event,
    EventKind,
    Region,
    SimState,
    TimeSeries,
    charge_time,
    cycle_events,
    simulate,
)
from .planner import (
    PlanEntry,
    PlannerConstraints,
    RankedPlan,
    VerifiedEntry,
    predict_charge_time,
    rank,
    verify_rank,
)
from .report import RunReport, build_report, format_report_table, render_svg, write_csv
from .scenario import Scenario, ScenarioError, apply_named_profile, load_scenario, parse_scenario
from .soc import SocState, coulomb_step
from .topology import (
    AssemblyHierarchy,
    PackConfig,
    enumerate_factorizations,
    flatten,
    format_layout,
    pack_capacity,
    pack_cell_volume,
    pack_mass,
    pack_nominal_voltage,
    parse_layout,
    reconfigure,
)

__version__ = "0.1.0"

__all__ = [
    "AssemblyHierarchy",
    "CellSpec",
    "ChargeMode",
    "ChargerProfile",
    "DEFAULT_OCV_TABLE",
    "Event",
    "EventKind",
    "PAPER_ETA",
    "PackConfig",
    "Phase",
    "PlanEntry",
    "PlannerConstraints",
    "RankedPlan",
    "Region",
    "RelayState",
    "RunReport",
    "Scenario",
    "ScenarioError",
    "SimState",
    "SocState",
    "TESLA_MODEL_Y_CELL",
    "TimeSeries",
    "VerifiedEntry",
    "apply_named_profile",
    "build_report",
    "cc_cv_command",
    "charge_time",
    "commanded_current",
    "coulomb_step",
    "cycle_events",
    "enumerate_factorizations",
    "flatten",
    "format_layout",
    "format_report_table",
    "load_scenario",
    "nominal_voltage",
    "ocv",
    "pack_capacity",
    "pack_cell_volume",
    "pack_mass",
    "pack_nominal_voltage",
    "paper_profile",
    "parse_layout",
    "parse_scenario",
    "predict_charge_time",
    "rank",
    "reconfigure",
    "relay_step",
    "render_svg",
    "simulate",
    "terminal_voltage",
    "verify_rank",
    "write_csv",
]
