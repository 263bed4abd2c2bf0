"""Fixed-step time-domain simulation of a pack on a charge/discharge bench.

Each step applies, in order: relay update, current command, Coulomb SOC
update, voltage evaluation, and event detection. The state equations are
piecewise-affine in SOC with event-driven switching, so stretches of constant
current (CC charging, discharging, idle) are filled vectorized with exactly
the per-step update law; only the CV taper region is stepped scalar. Threshold
crossings (SOC bounds, CV entry, CV cutoff, voltage floor) are located by
linear interpolation inside the crossing step; the step itself is never
subdivided, and all state switches take effect at step boundaries.

Sign convention: pack current is positive while charging.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .cell import ocv_knots
from .control import ChargeMode, ChargerProfile, Phase, _R_DEGENERATE
from .soc import SocState
from .topology import PackConfig, pack_capacity

PHASE_CHARGING = 0
PHASE_DISCHARGING = 1

REGION_CC = 0
REGION_CV = 1
REGION_IDLE = 2


class Region(str, Enum):
    CC = "cc"
    CV = "cv"
    IDLE = "idle"


_PHASE_BY_CODE = {PHASE_CHARGING: Phase.CHARGING, PHASE_DISCHARGING: Phase.DISCHARGING}
_REGION_BY_CODE = {REGION_CC: Region.CC, REGION_CV: Region.CV, REGION_IDLE: Region.IDLE}


class EventKind(str, Enum):
    FULL_CHARGE = "full_charge_reached"
    RELAY_TOGGLE = "relay_toggle"
    CC_TO_CV = "cc_to_cv"
    VOLTAGE_FLOOR = "voltage_floor_hit"


class Event(NamedTuple):
    t: float  # seconds, interpolated within the crossing step
    kind: EventKind


@dataclass(frozen=True)
class SimState:
    """Instantaneous simulator state at one recorded sample."""

    t: float
    soc: SocState
    phase: Phase
    i_pack: float
    v_pack: float
    control_region: Region


@dataclass
class TimeSeries:
    """Uniformly sampled trajectory of one simulation run.

    Arrays all have ``n_steps + 1`` entries; sample k is the state at
    ``t = k * dt`` with the current that applies over the following step.
    """

    dt: float
    soc: np.ndarray
    current_a: np.ndarray
    voltage_v: np.ndarray
    phase_code: np.ndarray
    region_code: np.ndarray
    events: list[Event]
    config: PackConfig
    profile: ChargerProfile
    initial_soc: float

    @property
    def n_samples(self) -> int:
        return len(self.soc)

    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) * self.dt

    def state_at(self, k: int) -> SimState:
        code = int(self.phase_code[k])
        sat_hi = bool(self.soc[k] >= 1.0 and k > 0 and self.current_a[k - 1] > 0)
        sat_lo = bool(self.soc[k] <= 0.0 and k > 0 and self.current_a[k - 1] < 0)
        return SimState(
            t=k * self.dt,
            soc=SocState(float(self.soc[k]), saturated_high=sat_hi, saturated_low=sat_lo),
            phase=_PHASE_BY_CODE[code],
            i_pack=float(self.current_a[k]),
            v_pack=float(self.voltage_v[k]),
            control_region=_REGION_BY_CODE[int(self.region_code[k])],
        )

    def mode_label(self, k: int) -> str:
        """Mode string at sample k: "discharge", or the charge control region."""
        if self.phase_code[k] == PHASE_DISCHARGING:
            return "discharge" if self.region_code[k] != REGION_IDLE else "idle"
        return _REGION_BY_CODE[int(self.region_code[k])].value

    def mode_labels(self) -> list[str]:
        return [self.mode_label(k) for k in range(self.n_samples)]


def _first_true(mask: np.ndarray) -> int | None:
    if mask.any():
        return int(np.argmax(mask))
    return None


class _Run:
    """Mutable state of one simulation; produces a TimeSeries."""

    def __init__(
        self,
        config: PackConfig,
        profile: ChargerProfile,
        n_steps: int,
        dt: float,
        initial_soc: float,
    ):
        self.config = config
        self.profile = profile
        self.n = n_steps
        self.dt = dt

        cell = config.cell
        self.knot_soc, self.knot_v = ocv_knots(cell)
        self.r = cell.r_internal
        self.degenerate_r = self.r < _R_DEGENERATE
        self.v_cv = cell.v_cv
        self.v_min = cell.v_min
        self.s = config.s
        self.p = config.p
        self.cap = pack_capacity(config)
        self.i_cutoff = (
            profile.i_cutoff if profile.i_cutoff is not None else self.cap / 20.0
        )

        size = n_steps + 1
        self.soc_arr = np.empty(size)
        self.cur_arr = np.empty(size)
        self.phase_arr = np.empty(size, dtype=np.uint8)
        self.region_arr = np.empty(size, dtype=np.uint8)
        self.events: list[Event] = []

        self.k = 0
        self.soc = float(initial_soc)
        self.phase = PHASE_CHARGING
        self.complete = False  # CV-cutoff latch; charger holds zero current
        self.soc_arr[0] = self.soc

    # -- helpers -------------------------------------------------------

    def _ocv(self, soc) -> np.ndarray | float:
        return np.interp(soc, self.knot_soc, self.knot_v)

    def _cc_command(self, soc: float) -> float:
        """Same law as control.cc_cv_command, without revalidation."""
        if self.profile.mode is ChargeMode.CC_ONLY:
            return self.profile.i_charge
        v_oc = float(self._ocv(soc))
        if self.degenerate_r:
            return self.profile.i_charge if v_oc < self.v_cv else 0.0
        i_cv = self.p * (self.v_cv - v_oc) / self.r
        return min(self.profile.i_charge, max(0.0, i_cv))

    def _fill_to_end(self, i_pack: float, phase: int, region: int):
        """Constant current and SOC from sample k through the end of the run."""
        self.cur_arr[self.k :] = i_pack
        self.phase_arr[self.k :] = phase
        self.region_arr[self.k :] = region
        self.soc_arr[self.k + 1 :] = self.soc
        self.k = self.n + 1

    # -- segment handlers ----------------------------------------------

    def _charge_cc(self):
        """Constant-current charging until CV entry, soc_high, or run end."""
        prof = self.profile
        i = prof.i_charge
        delta = prof.eta_charge * i * self.dt / (3600.0 * self.cap)
        k = self.k
        m = self.n - k
        if m == 0:
            self.cur_arr[k] = i
            self.phase_arr[k] = PHASE_CHARGING
            self.region_arr[k] = REGION_CC
            self.k = self.n + 1
            return

        cand = self.soc + delta * np.arange(1, m + 1)
        idx_hi = _first_true(cand >= prof.soc_high)

        idx_cv = None
        taper = None
        if prof.mode is ChargeMode.CC_CV:
            ocv_c = self._ocv(cand)
            if self.degenerate_r:
                taper = np.where(ocv_c < self.v_cv, i, 0.0)
            else:
                taper = self.p * (self.v_cv - ocv_c) / self.r
            idx_cv = _first_true(taper < i)

        if idx_hi is not None and (idx_cv is None or idx_hi <= idx_cv):
            j = idx_hi
            self._write_cc_block(k, j, i, cand)
            prev = cand[j - 1] if j > 0 else self.soc
            frac = (prof.soc_high - prev) / delta
            t_cross = (k + j + frac) * self.dt
            self.events.append(Event(t_cross, EventKind.FULL_CHARGE))
            self.events.append(Event(t_cross, EventKind.RELAY_TOGGLE))
            self.phase = PHASE_DISCHARGING
            self.complete = False
            self.soc = float(self.soc_arr[k + 1 + j])
            self.k = k + 1 + j
        elif idx_cv is not None:
            j = idx_cv
            self._write_cc_block(k, j, i, cand)
            if j > 0:
                q_prev = float(taper[j - 1])
            elif self.degenerate_r:
                q_prev = i
            else:
                q_prev = self.p * (self.v_cv - float(self._ocv(self.soc))) / self.r
            q_new = float(taper[j])
            frac = (q_prev - i) / (q_prev - q_new) if q_prev > q_new else 1.0
            self.events.append(Event((k + j + frac) * self.dt, EventKind.CC_TO_CV))
            self.soc = float(self.soc_arr[k + 1 + j])
            self.k = k + 1 + j
        else:
            self.cur_arr[k : self.n + 1] = i
            self.phase_arr[k : self.n + 1] = PHASE_CHARGING
            self.region_arr[k : self.n + 1] = REGION_CC
            self.soc_arr[k + 1 : self.n + 1] = np.minimum(cand, 1.0)
            self.k = self.n + 1

    def _write_cc_block(self, k: int, j: int, i: float, cand: np.ndarray):
        self.cur_arr[k : k + j + 1] = i
        self.phase_arr[k : k + j + 1] = PHASE_CHARGING
        self.region_arr[k : k + j + 1] = REGION_CC
        self.soc_arr[k + 1 : k + j + 1] = cand[:j]
        self.soc_arr[k + 1 + j] = min(float(cand[j]), 1.0)

    def _charge_cv(self):
        """Scalar stepping through the CV taper (and its termination)."""
        prof = self.profile
        i_full = prof.i_charge
        scale = prof.eta_charge * self.dt / (3600.0 * self.cap)
        prev_cmd = None
        while True:
            cmd = self._cc_command(self.soc)
            if cmd <= self.i_cutoff and cmd < i_full:
                # Charge-complete: taper reached the termination current.
                if prev_cmd is not None and prev_cmd > self.i_cutoff:
                    frac = (prev_cmd - self.i_cutoff) / (prev_cmd - cmd)
                    t_ev = (self.k - 1 + frac) * self.dt
                else:
                    t_ev = self.k * self.dt
                self.events.append(Event(t_ev, EventKind.FULL_CHARGE))
                self.complete = True
                self._fill_to_end(0.0, PHASE_CHARGING, REGION_IDLE)
                return
            self.cur_arr[self.k] = cmd
            self.phase_arr[self.k] = PHASE_CHARGING
            self.region_arr[self.k] = REGION_CC if cmd >= i_full else REGION_CV
            if self.k == self.n:
                self.k += 1
                return
            unclamped = self.soc + scale * cmd
            new_soc = min(1.0, unclamped)
            self.soc_arr[self.k + 1] = new_soc
            if unclamped >= prof.soc_high:
                frac = (prof.soc_high - self.soc) / (unclamped - self.soc)
                t_cross = (self.k + frac) * self.dt
                self.events.append(Event(t_cross, EventKind.FULL_CHARGE))
                self.events.append(Event(t_cross, EventKind.RELAY_TOGGLE))
                self.phase = PHASE_DISCHARGING
                self.complete = False
                self.soc = new_soc
                self.k += 1
                return
            prev_cmd = cmd
            self.soc = new_soc
            self.k += 1

    def _discharge(self):
        """Constant-current discharge until soc_low, voltage floor, or run end."""
        prof = self.profile
        i_d = prof.i_discharge
        delta = -i_d * self.dt / (3600.0 * self.cap)
        k = self.k
        m = self.n - k
        if m == 0:
            self.cur_arr[k] = -i_d
            self.phase_arr[k] = PHASE_DISCHARGING
            self.region_arr[k] = REGION_CC
            self.k = self.n + 1
            return

        cand = self.soc + delta * np.arange(1, m + 1)
        idx_lo = _first_true(cand <= prof.soc_low)
        # Per-cell floor: v_pack < s*v_min  <=>  ocv(soc) < v_min + (i_d/p)*r
        v_thr = self.v_min + (i_d / self.p) * self.r
        ocv_c = self._ocv(np.maximum(cand, 0.0))
        idx_fl = _first_true(ocv_c < v_thr)

        if idx_lo is None and idx_fl is None:
            self.cur_arr[k : self.n + 1] = -i_d
            self.phase_arr[k : self.n + 1] = PHASE_DISCHARGING
            self.region_arr[k : self.n + 1] = REGION_CC
            self.soc_arr[k + 1 : self.n + 1] = np.maximum(cand, 0.0)
            self.k = self.n + 1
            return

        floor_first = idx_lo is None or (idx_fl is not None and idx_fl < idx_lo)
        j = idx_fl if floor_first else idx_lo
        self.cur_arr[k : k + j + 1] = -i_d
        self.phase_arr[k : k + j + 1] = PHASE_DISCHARGING
        self.region_arr[k : k + j + 1] = REGION_CC
        self.soc_arr[k + 1 : k + j + 1] = cand[:j]
        self.soc_arr[k + 1 + j] = max(float(cand[j]), 0.0)
        prev = float(cand[j - 1]) if j > 0 else self.soc

        if floor_first:
            q_prev = float(self._ocv(max(prev, 0.0)))
            q_new = float(ocv_c[j])
            frac = (q_prev - v_thr) / (q_prev - q_new) if q_prev > q_new else 1.0
            t_cross = (k + j + frac) * self.dt
            self.events.append(Event(t_cross, EventKind.VOLTAGE_FLOOR))
        else:
            frac = (prev - prof.soc_low) / (-delta)
            t_cross = (k + j + frac) * self.dt
        self.events.append(Event(t_cross, EventKind.RELAY_TOGGLE))
        self.phase = PHASE_CHARGING
        self.complete = False
        self.soc = float(self.soc_arr[k + 1 + j])
        self.k = k + 1 + j

    # -- driver --------------------------------------------------------

    def run(self) -> TimeSeries:
        prof = self.profile
        # Relay boundary condition at t = 0.
        if self.phase == PHASE_CHARGING and self.soc >= prof.soc_high:
            self.events.append(Event(0.0, EventKind.FULL_CHARGE))
            self.events.append(Event(0.0, EventKind.RELAY_TOGGLE))
            self.phase = PHASE_DISCHARGING

        while self.k <= self.n:
            if self.phase == PHASE_CHARGING:
                if self.complete or prof.i_charge == 0.0:
                    self._fill_to_end(0.0, PHASE_CHARGING, REGION_IDLE)
                elif (
                    prof.mode is ChargeMode.CC_CV
                    and self._cc_command(self.soc) < prof.i_charge
                ):
                    self._charge_cv()
                else:
                    self._charge_cc()
            else:
                if prof.i_discharge == 0.0:
                    self._fill_to_end(0.0, PHASE_DISCHARGING, REGION_IDLE)
                else:
                    self._discharge()

        voltage = self.s * (
            self._ocv(self.soc_arr) + (self.cur_arr / self.p) * self.r
        )
        return TimeSeries(
            dt=self.dt,
            soc=self.soc_arr,
            current_a=self.cur_arr,
            voltage_v=voltage,
            phase_code=self.phase_arr,
            region_code=self.region_arr,
            events=self.events,
            config=self.config,
            profile=self.profile,
            initial_soc=float(self.soc_arr[0]),
        )


def simulate(
    config: PackConfig,
    profile: ChargerProfile,
    duration: float,
    dt: float = 1.0,
    initial_soc: float = 0.0,
) -> TimeSeries:
    """Simulate the charge/discharge bench for ``duration`` seconds.

    The run starts in the charging phase at ``initial_soc`` and records
    ``round(duration / dt) + 1`` samples spaced exactly ``dt`` apart.
    Deterministic for identical inputs. A pack voltage below the per-cell
    discharge floor emits a voltage_floor_hit event and forces the relay
    back to charging instead of aborting the run.
    """
    if duration <= 0:
        raise ValueError(f"duration must be > 0, got {duration}")
    if not 0 < dt <= duration:
        raise ValueError(f"dt must satisfy 0 < dt <= duration, got {dt}")
    if not 0.0 <= initial_soc <= 1.0:
        raise ValueError(f"initial_soc must be in [0, 1], got {initial_soc}")
    n_steps = max(1, int(round(duration / dt)))
    return _Run(config, profile, n_steps, dt, initial_soc).run()


def charge_time(series: TimeSeries) -> float | None:
    """Hours until the first full-charge event, or ``None`` if never reached.

    The event time is linearly interpolated within the crossing step, so in
    cc_only mode this matches the analytical value p*C/(I*eta) to rounding.
    """
    for ev in series.events:
        if ev.kind is EventKind.FULL_CHARGE:
            return ev.t / 3600.0
    return None


def cycle_events(series: TimeSeries) -> list[float]:
    """Relay toggle instants in hours, in chronological order."""
    return [ev.t / 3600.0 for ev in series.events if ev.kind is EventKind.RELAY_TOGGLE]
