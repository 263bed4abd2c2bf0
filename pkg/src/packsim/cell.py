"""Single lithium-ion cell: parameters and equivalent-circuit electrical behavior.

The cell is modeled as a first-order equivalent circuit: an SOC-dependent
open-circuit voltage source (piecewise-linear lookup table) in series with a
constant internal resistance. This is the minimum model that exhibits a
CC-to-CV charging transition. Geometry and mass are carried for pack-level
reporting only and do not affect the electrical simulation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Generic Li-ion NMC open-circuit-voltage shape. These knots are artifact
# defaults, overridable per scenario; they are not measured cell data.
DEFAULT_OCV_TABLE: tuple[tuple[float, float], ...] = (
    (0.0, 3.00),
    (0.1, 3.45),
    (0.2, 3.55),
    (0.4, 3.62),
    (0.6, 3.72),
    (0.8, 3.90),
    (0.9, 4.05),
    (1.0, 4.20),
)


@dataclass(frozen=True)
class CellSpec:
    """Physical and electrical parameters of one cylindrical cell.

    Units: radius/height in meters, mass in kg, capacity in Ah, energy in Wh,
    r_internal in ohms, voltages in volts. ``ocv_table`` maps SOC fraction
    (strictly increasing, spanning exactly [0, 1]) to open-circuit voltage
    (non-decreasing). ``v_cv`` is the per-cell CV charge limit, ``v_min`` the
    per-cell discharge floor.
    """

    radius: float = 0.023
    height: float = 0.08
    mass: float = 0.355
    capacity: float = 23.35
    energy: float = 86.5
    r_internal: float = 0.02
    ocv_table: tuple[tuple[float, float], ...] = field(default=DEFAULT_OCV_TABLE)
    v_cv: float = 4.20
    v_min: float = 2.50

    def __post_init__(self):
        if self.capacity <= 0:
            raise ValueError(f"capacity must be > 0, got {self.capacity}")
        if self.energy <= 0:
            raise ValueError(f"energy must be > 0, got {self.energy}")
        if self.mass <= 0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.radius <= 0 or self.height <= 0:
            raise ValueError("radius and height must be > 0")
        if self.r_internal < 0:
            raise ValueError(f"r_internal must be >= 0, got {self.r_internal}")

        table = tuple((float(s), float(v)) for s, v in self.ocv_table)
        object.__setattr__(self, "ocv_table", table)
        if len(table) < 2:
            raise ValueError("ocv_table needs at least two (soc, volts) knots")
        socs = [s for s, _ in table]
        volts = [v for _, v in table]
        if socs[0] != 0.0 or socs[-1] != 1.0:
            raise ValueError("ocv_table SOC keys must span exactly [0, 1]")
        if any(b <= a for a, b in zip(socs, socs[1:])):
            raise ValueError("ocv_table SOC keys must be strictly increasing")
        if any(b < a for a, b in zip(volts, volts[1:])):
            raise ValueError("ocv_table voltages must be non-decreasing")
        if self.v_min > volts[0]:
            raise ValueError(
                f"v_min ({self.v_min}) must not exceed the 0%-SOC voltage ({volts[0]})"
            )
        if self.v_cv <= self.v_min:
            raise ValueError(f"v_cv ({self.v_cv}) must exceed v_min ({self.v_min})")


# 2022 Tesla Model Y cylindrical cell (public datasheet figures); electrical
# parameters beyond capacity/energy use the artifact defaults above.
TESLA_MODEL_Y_CELL = CellSpec()


@lru_cache(maxsize=64)
def ocv_knots(spec: CellSpec) -> tuple[np.ndarray, np.ndarray]:
    """SOC and voltage knot arrays for ``spec``, cached per spec."""
    socs = np.array([s for s, _ in spec.ocv_table], dtype=float)
    volts = np.array([v for _, v in spec.ocv_table], dtype=float)
    return socs, volts


def nominal_voltage(spec: CellSpec) -> float:
    """Nominal cell voltage, defined as energy / capacity (Wh / Ah = V)."""
    if spec.capacity <= 0:
        raise ValueError(f"capacity must be > 0, got {spec.capacity}")
    return spec.energy / spec.capacity


def ocv(spec: CellSpec, soc: float) -> float:
    """Open-circuit voltage at ``soc`` by piecewise-linear interpolation.

    Exact at table knots. Raises ValueError outside [0, 1].
    """
    if not 0.0 <= soc <= 1.0:
        raise ValueError(f"soc must be in [0, 1], got {soc}")
    socs, volts = ocv_knots(spec)
    return float(np.interp(soc, socs, volts))


def terminal_voltage(spec: CellSpec, soc: float, i_cell: float) -> float:
    """Terminal voltage under load: ocv(soc) + i_cell * r_internal.

    ``i_cell`` is signed, charging positive, so the terminal voltage rises
    above OCV while charging and sags below it while discharging.
    """
    return ocv(spec, soc) + i_cell * spec.r_internal
