"""CC-CV charging law and the hysteresis relay that cycles charge/discharge.

The charger drives the whole pack with a commanded current: +i_charge in the
CC region, a tapering current in the CV region (cc_cv mode only), and
-i_discharge while the relay is in the discharging phase. The relay is a
two-threshold hysteresis switch: it flips to discharging when SOC reaches
``soc_high`` and back to charging when SOC falls to ``soc_low``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .cell import ocv
from .topology import PackConfig

# Calibration constant that reproduces the reference charge times for the
# 23.35 Ah cell: a single multiplicative charge-acceptance factor.
PAPER_ETA = 0.86481

# Below this internal resistance the CV taper formula degenerates; treat the
# cell as ideal and switch hard from CC to zero current at the CV voltage.
_R_DEGENERATE = 1e-9


class ChargeMode(str, Enum):
    CC_ONLY = "cc_only"
    CC_CV = "cc_cv"


class Phase(str, Enum):
    CHARGING = "charging"
    DISCHARGING = "discharging"


@dataclass(frozen=True)
class ChargerProfile:
    """Charger setpoints and cycling thresholds.

    ``i_discharge`` defaults to ``i_charge`` (charge and discharge levels are
    set together). ``i_cutoff`` is the CV termination current; ``None`` means
    "C/20 of the pack under simulation", resolved by the engine. ``eta_charge``
    is the charge-acceptance factor applied to charging coulombs only.
    """

    i_charge: float
    i_discharge: float | None = None
    mode: ChargeMode = ChargeMode.CC_CV
    i_cutoff: float | None = None
    soc_high: float = 1.0
    soc_low: float = 0.0
    eta_charge: float = 1.0

    def __post_init__(self):
        if self.i_charge < 0:
            raise ValueError(f"i_charge must be >= 0, got {self.i_charge}")
        if self.i_discharge is None:
            object.__setattr__(self, "i_discharge", self.i_charge)
        if self.i_discharge < 0:
            raise ValueError(f"i_discharge must be >= 0, got {self.i_discharge}")
        if self.i_cutoff is not None and self.i_cutoff < 0:
            raise ValueError(f"i_cutoff must be >= 0, got {self.i_cutoff}")
        object.__setattr__(self, "mode", ChargeMode(self.mode))
        if not 0.0 <= self.soc_low < self.soc_high <= 1.0:
            raise ValueError(
                f"need 0 <= soc_low < soc_high <= 1, got low={self.soc_low} high={self.soc_high}"
            )
        if not 0.0 < self.eta_charge <= 1.0:
            raise ValueError(f"eta_charge must be in (0, 1], got {self.eta_charge}")


def paper_profile(i_charge: float = 15.0) -> ChargerProfile:
    """Calibrated cc_only profile: full-range cycling, eta = PAPER_ETA."""
    return ChargerProfile(
        i_charge=i_charge,
        i_discharge=i_charge,
        mode=ChargeMode.CC_ONLY,
        soc_high=1.0,
        soc_low=0.0,
        eta_charge=PAPER_ETA,
    )


@dataclass(frozen=True)
class RelayState:
    """Current phase of the charge/discharge relay."""

    phase: Phase = Phase.CHARGING


def cc_cv_command(profile: ChargerProfile, config: PackConfig, soc: float) -> float:
    """Pack charging current commanded by the CC-CV law at ``soc``.

    In cc_only mode the command is always ``i_charge``. In cc_cv mode the
    command is ``i_charge`` while the terminal voltage at that current stays
    at or below s * v_cv, and afterwards the CV current
    p * (v_cv - ocv(soc)) / r_internal clamped to [0, i_charge]. A cell with
    (near-)zero internal resistance degenerates to a hard cutoff: full
    current below the CV voltage, zero at or above it.
    """
    if not 0.0 <= soc <= 1.0:
        raise ValueError(f"soc must be in [0, 1], got {soc}")
    if profile.mode is ChargeMode.CC_ONLY:
        return profile.i_charge

    cell = config.cell
    v_oc = ocv(cell, soc)
    if cell.r_internal < _R_DEGENERATE:
        return profile.i_charge if v_oc < cell.v_cv else 0.0
    i_cv = config.p * (cell.v_cv - v_oc) / cell.r_internal
    return min(profile.i_charge, max(0.0, i_cv))


def relay_step(state: RelayState, soc: float, profile: ChargerProfile) -> RelayState:
    """Advance the hysteresis relay one step based on the current SOC.

    Flips charging -> discharging at soc >= soc_high and discharging ->
    charging at soc <= soc_low; anywhere strictly inside the band the state
    is retained unchanged.
    """
    if not 0.0 <= soc <= 1.0:
        raise ValueError(f"soc must be in [0, 1], got {soc}")
    if state.phase is Phase.CHARGING and soc >= profile.soc_high:
        return RelayState(phase=Phase.DISCHARGING)
    if state.phase is Phase.DISCHARGING and soc <= profile.soc_low:
        return RelayState(phase=Phase.CHARGING)
    return state


def commanded_current(
    state: RelayState, profile: ChargerProfile, config: PackConfig, soc: float
) -> float:
    """Signed pack current for the current relay phase (charging positive)."""
    if state.phase is Phase.CHARGING:
        return cc_cv_command(profile, config, soc)
    return -profile.i_discharge
