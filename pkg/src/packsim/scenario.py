"""Scenario files: a TOML document describing cell, pack, charger, and run.

Example::

    name = "tesla-92s9p-15a"
    pack = "92S9P"            # or a [pack] table with the hierarchy counts

    [cell]
    capacity = 23.35          # Ah
    energy = 86.5             # Wh

    [charger]
    i_charge = 15.0           # A
    mode = "cc_only"

    [sim]
    duration_h = 48.0
    dt = 1.0

Every omitted key falls back to a documented default; unknown keys are
rejected with their full key path so typos cannot silently change a run.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .cell import TESLA_MODEL_Y_CELL, CellSpec
from .control import PAPER_ETA, ChargeMode, ChargerProfile
from .topology import AssemblyHierarchy, PackConfig, flatten, parse_layout

_CELL_KEYS = {
    "radius", "height", "mass", "capacity", "energy",
    "r_internal", "ocv_table", "v_cv", "v_min",
}
_CHARGER_KEYS = {
    "i_charge", "i_discharge", "mode", "i_cutoff",
    "soc_high", "soc_low", "eta_charge",
}
_SIM_KEYS = {"duration_h", "dt", "initial_soc", "sample_interval"}
_PACK_KEYS = {
    "cells_in_parallel",
    "assemblies_in_series_per_module",
    "modules_in_series_per_assembly",
    "module_assemblies_in_series_per_pack",
}
_TOP_KEYS = {"name", "pack", "cell", "charger", "sim"}

# Simulation defaults applied when the [sim] section omits a key.
DEFAULT_DURATION_H = 48.0
DEFAULT_DT = 1.0
DEFAULT_INITIAL_SOC = 0.0
DEFAULT_SAMPLE_INTERVAL = 60.0


class ScenarioError(ValueError):
    """Malformed scenario document; the message carries the key path."""


@dataclass(frozen=True)
class Scenario:
    """A fully validated simulation setup."""

    name: str
    pack: PackConfig
    profile: ChargerProfile
    duration_h: float = DEFAULT_DURATION_H
    dt: float = DEFAULT_DT
    initial_soc: float = DEFAULT_INITIAL_SOC
    sample_interval: float = DEFAULT_SAMPLE_INTERVAL

    @property
    def duration_s(self) -> float:
        return self.duration_h * 3600.0


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _require_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{path}: expected an integer, got {value!r}")
    return value


def _reject_unknown(section: dict, allowed: set[str], prefix: str):
    for key in section:
        if key not in allowed:
            where = f"{prefix}.{key}" if prefix else key
            raise ScenarioError(f"{where}: unknown key")


def _parse_cell(section: dict) -> CellSpec:
    _reject_unknown(section, _CELL_KEYS, "cell")
    kwargs = {}
    for key in _CELL_KEYS - {"ocv_table"}:
        if key in section:
            kwargs[key] = _require_number(section[key], f"cell.{key}")
    if "ocv_table" in section:
        raw = section["ocv_table"]
        if not isinstance(raw, list) or not all(
            isinstance(row, list) and len(row) == 2 for row in raw
        ):
            raise ScenarioError("cell.ocv_table: expected a list of [soc, volts] pairs")
        kwargs["ocv_table"] = tuple(
            (
                _require_number(row[0], "cell.ocv_table[soc]"),
                _require_number(row[1], "cell.ocv_table[volts]"),
            )
            for row in raw
        )
    try:
        return replace(TESLA_MODEL_Y_CELL, **kwargs)
    except ValueError as exc:
        raise ScenarioError(f"cell: {exc}") from exc


def _parse_pack(value, cell: CellSpec) -> PackConfig:
    if isinstance(value, str):
        try:
            s, p = parse_layout(value)
        except ValueError as exc:
            raise ScenarioError(f"pack: {exc}") from exc
        return PackConfig(s=s, p=p, cell=cell)
    if isinstance(value, dict):
        _reject_unknown(value, _PACK_KEYS, "pack")
        missing = _PACK_KEYS - set(value)
        if missing:
            raise ScenarioError(f"pack: missing hierarchy keys {sorted(missing)}")
        try:
            hierarchy = AssemblyHierarchy(
                **{k: _require_int(value[k], f"pack.{k}") for k in _PACK_KEYS}
            )
        except ValueError as exc:
            raise ScenarioError(f"pack: {exc}") from exc
        return flatten(hierarchy, cell)
    raise ScenarioError(
        'pack: expected an "NSMP" string (e.g. "92S9P") or a hierarchy table'
    )


def _parse_charger(section: dict) -> ChargerProfile:
    _reject_unknown(section, _CHARGER_KEYS, "charger")
    if "i_charge" not in section:
        raise ScenarioError("charger.i_charge: required key is missing")
    kwargs = {"i_charge": _require_number(section["i_charge"], "charger.i_charge")}
    for key in ("i_discharge", "i_cutoff", "soc_high", "soc_low", "eta_charge"):
        if key in section:
            kwargs[key] = _require_number(section[key], f"charger.{key}")
    if "mode" in section:
        mode = section["mode"]
        try:
            kwargs["mode"] = ChargeMode(mode)
        except ValueError:
            raise ScenarioError(
                f'charger.mode: expected "cc_only" or "cc_cv", got {mode!r}'
            ) from None
    try:
        return ChargerProfile(**kwargs)
    except ValueError as exc:
        raise ScenarioError(f"charger: {exc}") from exc


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    """Parse and validate a TOML scenario document."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"malformed scenario document: {exc}") from exc
    _reject_unknown(doc, _TOP_KEYS, "")

    if "name" in doc:
        if not isinstance(doc["name"], str) or not doc["name"]:
            raise ScenarioError("name: expected a non-empty string")
        name = doc["name"]

    cell_section = doc.get("cell", {})
    if not isinstance(cell_section, dict):
        raise ScenarioError("cell: expected a table of cell parameters")
    cell = _parse_cell(cell_section)

    if "pack" not in doc:
        raise ScenarioError("pack: required section is missing")
    pack = _parse_pack(doc["pack"], cell)

    charger_section = doc.get("charger")
    if not isinstance(charger_section, dict):
        raise ScenarioError("charger: required section is missing")
    profile = _parse_charger(charger_section)

    sim = doc.get("sim", {})
    if not isinstance(sim, dict):
        raise ScenarioError("sim: expected a table of run settings")
    _reject_unknown(sim, _SIM_KEYS, "sim")
    duration_h = _require_number(sim.get("duration_h", DEFAULT_DURATION_H), "sim.duration_h")
    dt = _require_number(sim.get("dt", DEFAULT_DT), "sim.dt")
    initial_soc = _require_number(
        sim.get("initial_soc", DEFAULT_INITIAL_SOC), "sim.initial_soc"
    )
    sample_interval = _require_number(
        sim.get("sample_interval", DEFAULT_SAMPLE_INTERVAL), "sim.sample_interval"
    )
    if duration_h <= 0:
        raise ScenarioError(f"sim.duration_h: must be > 0, got {duration_h}")
    if not 0 < dt <= duration_h * 3600.0:
        raise ScenarioError(f"sim.dt: must be in (0, duration], got {dt}")
    if not 0.0 <= initial_soc <= 1.0:
        raise ScenarioError(f"sim.initial_soc: must be in [0, 1], got {initial_soc}")
    if sample_interval < dt:
        raise ScenarioError(
            f"sim.sample_interval: must be >= dt ({dt}), got {sample_interval}"
        )

    return Scenario(
        name=name,
        pack=pack,
        profile=profile,
        duration_h=duration_h,
        dt=dt,
        initial_soc=initial_soc,
        sample_interval=sample_interval,
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), name=path.stem)


def apply_named_profile(scenario: Scenario, profile_name: str) -> Scenario:
    """Apply a named charger preset on top of a scenario.

    "paper" forces cc_only mode, the calibrated charge acceptance, and
    full-range relay thresholds while keeping the scenario's current levels;
    "default" leaves the scenario untouched.
    """
    if profile_name == "default":
        return scenario
    if profile_name == "paper":
        calibrated = replace(
            scenario.profile,
            mode=ChargeMode.CC_ONLY,
            eta_charge=PAPER_ETA,
            soc_high=1.0,
            soc_low=0.0,
        )
        return replace(scenario, profile=calibrated)
    raise ScenarioError(f'unknown profile {profile_name!r}: expected "paper" or "default"')
