"""Pack topology: assembly hierarchy, flattened SxP configs, factorizations.

A pack is described electrically by the flattened pair (s, p): s cells in
series per string, p identical strings in parallel. The four-level build
hierarchy (cell -> parallel assembly -> module -> module assembly -> pack)
flattens to that pair; for identical cells the series-of-parallel and
parallel-of-series wirings are electrically equivalent, so only (s, p) is
stored. Mass and volume aggregates are for reporting; they do not enter the
electrical model.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .cell import CellSpec, nominal_voltage

_LAYOUT_RE = re.compile(r"^(\d+)S(\d+)P$")


@dataclass(frozen=True)
class AssemblyHierarchy:
    """Four-level pack build description, innermost level first."""

    cells_in_parallel: int
    assemblies_in_series_per_module: int
    modules_in_series_per_assembly: int
    module_assemblies_in_series_per_pack: int

    def __post_init__(self):
        for name, count in (
            ("cells_in_parallel", self.cells_in_parallel),
            ("assemblies_in_series_per_module", self.assemblies_in_series_per_module),
            ("modules_in_series_per_assembly", self.modules_in_series_per_assembly),
            ("module_assemblies_in_series_per_pack", self.module_assemblies_in_series_per_pack),
        ):
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {count}")


@dataclass(frozen=True)
class PackConfig:
    """Flattened SxP electrical topology over a single cell type."""

    s: int
    p: int
    cell: CellSpec

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if not isinstance(self.p, int) or self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")

    @property
    def total_cells(self) -> int:
        return self.s * self.p

    @property
    def layout(self) -> str:
        return format_layout(self.s, self.p)


def flatten(h: AssemblyHierarchy, cell: CellSpec) -> PackConfig:
    """Flatten a hierarchy: p = cells in parallel, s = product of series counts."""
    s = (
        h.assemblies_in_series_per_module
        * h.modules_in_series_per_assembly
        * h.module_assemblies_in_series_per_pack
    )
    return PackConfig(s=s, p=h.cells_in_parallel, cell=cell)


def pack_capacity(c: PackConfig) -> float:
    """Pack capacity in Ah: parallel strings add capacity."""
    return c.p * c.cell.capacity


def pack_nominal_voltage(c: PackConfig) -> float:
    """Pack nominal voltage in V: series cells add voltage."""
    return c.s * nominal_voltage(c.cell)


def pack_mass(c: PackConfig) -> float:
    """Total cell mass in kg (cells only, no enclosure or busbars)."""
    return c.total_cells * c.cell.mass


def pack_cell_volume(c: PackConfig) -> float:
    """Summed cylindrical cell volume in m^3, ignoring packing voids."""
    return c.total_cells * math.pi * c.cell.radius**2 * c.cell.height


def reconfigure(c: PackConfig, new_s: int, new_p: int) -> tuple[PackConfig, str | None]:
    """Rewire the pack as new_s x new_p, keeping the same cell.

    Returns the new config plus a warning string when the cell count is not
    conserved (the rewiring drops or needs extra cells); a mismatch is
    deliberately a warning rather than an error so non-conserving
    reconfigurations can still be studied.
    """
    new = PackConfig(s=new_s, p=new_p, cell=c.cell)
    warning = None
    if new.total_cells != c.total_cells:
        warning = f"cell count {c.total_cells} -> {new.total_cells}"
    return new, warning


def enumerate_factorizations(n_cells: int) -> list[tuple[int, int]]:
    """All ordered pairs (s, p) with s * p == n_cells, sorted by ascending s."""
    if not isinstance(n_cells, int) or n_cells < 1:
        raise ValueError(f"n_cells must be an integer >= 1, got {n_cells}")
    divisors = []
    for d in range(1, math.isqrt(n_cells) + 1):
        if n_cells % d == 0:
            divisors.append(d)
            if d != n_cells // d:
                divisors.append(n_cells // d)
    divisors.sort()
    return [(s, n_cells // s) for s in divisors]


def parse_layout(text: str) -> tuple[int, int]:
    """Parse an "NSMP" layout string like "92S9P" into (s, p)."""
    m = _LAYOUT_RE.match(text.strip())
    if not m:
        raise ValueError(
            f"invalid pack layout {text!r}: expected the form <s>S<p>P, e.g. 92S9P"
        )
    s, p = int(m.group(1)), int(m.group(2))
    if s < 1:
        raise ValueError(f"invalid pack layout {text!r}: s must be >= 1")
    if p < 1:
        raise ValueError(f"invalid pack layout {text!r}: p must be >= 1")
    return s, p


def format_layout(s: int, p: int) -> str:
    return f"{s}S{p}P"
