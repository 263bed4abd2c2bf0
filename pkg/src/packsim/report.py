"""Result emission: run reports, CSV time series, SVG plots, JSON summaries.

All outputs are deterministic: identical inputs produce byte-identical files
(SVG metadata that would normally embed a timestamp is stripped and the
element-id hash salt is pinned).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .engine import TimeSeries, charge_time, cycle_events

CSV_COLUMNS = ("time_s", "mode", "soc", "pack_voltage_v", "pack_current_a", "cumulative_ah")

_SVG_HASHSALT = "packsim"


@dataclass
class RunReport:
    """Summary of one simulation run."""

    name: str
    charge_time_h: float | None
    toggle_count: int
    final_soc: float
    peak_voltage_v: float
    warnings: list[str] = field(default_factory=list)

    @property
    def charge_time_label(self) -> str:
        if self.charge_time_h is None:
            return "not reached"
        return f"{self.charge_time_h:.2f} h"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "charge_time_h": self.charge_time_h,
            "charge_time": self.charge_time_label,
            "toggle_count": self.toggle_count,
            "final_soc": self.final_soc,
            "peak_voltage_v": self.peak_voltage_v,
            "warnings": list(self.warnings),
        }


def build_report(name: str, series: TimeSeries, warnings: list[str] | None = None) -> RunReport:
    return RunReport(
        name=name,
        charge_time_h=charge_time(series),
        toggle_count=len(cycle_events(series)),
        final_soc=float(series.soc[-1]),
        peak_voltage_v=float(series.voltage_v.max()),
        warnings=list(warnings or []),
    )


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def write_csv(series: TimeSeries, path: str | Path, sample_interval: float | None = None):
    """Write the trajectory as CSV, decimated to ``sample_interval`` seconds.

    Columns: time_s, mode, soc, pack_voltage_v, pack_current_a, cumulative_ah.
    Numeric values are printed to 6 significant digits. ``cumulative_ah`` is
    the signed charge delivered to the pack since the start of the run.
    """
    stride = 1
    if sample_interval is not None:
        stride = max(1, int(round(sample_interval / series.dt)))

    n = series.n_samples
    cumulative = np.concatenate(
        ([0.0], np.cumsum(series.current_a[:-1]) * series.dt / 3600.0)
    )
    times = series.times()

    lines = [",".join(CSV_COLUMNS)]
    for k in range(0, n, stride):
        lines.append(
            ",".join(
                (
                    _fmt(times[k]),
                    series.mode_label(k),
                    _fmt(series.soc[k]),
                    _fmt(series.voltage_v[k]),
                    _fmt(series.current_a[k]),
                    _fmt(cumulative[k]),
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_svg(named_series: list[tuple[str, TimeSeries]], path: str | Path):
    """Render SOC / voltage / current panels, one trace per run, to SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with plt.rc_context({"svg.hashsalt": _SVG_HASHSALT}):
        fig, axes = plt.subplots(3, 1, figsize=(9, 9), sharex=True)
        for name, series in named_series:
            t_h = series.times() / 3600.0
            axes[0].plot(t_h, series.soc * 100.0, label=name, linewidth=1.2)
            axes[1].plot(t_h, series.voltage_v, label=name, linewidth=1.2)
            axes[2].plot(t_h, series.current_a, label=name, linewidth=1.2)
        axes[0].set_ylabel("SOC [%]")
        axes[1].set_ylabel("Pack voltage [V]")
        axes[2].set_ylabel("Pack current [A]")
        axes[2].set_xlabel("Time [h]")
        for ax in axes:
            ax.grid(True, alpha=0.3)
        axes[0].legend(loc="best", fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def format_report_table(reports: list[RunReport]) -> str:
    """Fixed-width comparison table, one run per row."""
    headers = ("config", "charge_time", "toggles", "final_soc", "peak_v", "warnings")
    rows = [headers]
    for r in reports:
        rows.append(
            (
                r.name,
                r.charge_time_label,
                str(r.toggle_count),
                f"{r.final_soc:.4f}",
                f"{r.peak_voltage_v:.1f} V",
                "; ".join(r.warnings) if r.warnings else "-",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(headers))]
    lines = []
    for idx, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def write_reports_json(reports: list[RunReport], path: str | Path):
    payload = {"runs": [r.to_dict() for r in reports]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
