"""Coulomb-counting state-of-charge estimator.

SOC is integrated directly from pack current: delta = eta * I * dt / (3600 * C)
while charging and I * dt / (3600 * C) while discharging. For piecewise-constant
current this estimator has no integration error; the only nonlinearity is the
clamp at the [0, 1] bounds, flagged so the relay logic can detect them.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SocState:
    """SOC fraction plus saturation flags for the latest step.

    A saturation flag is set iff the unclamped update crossed the
    corresponding bound on the step that produced this state.
    """

    soc: float
    saturated_high: bool = False
    saturated_low: bool = False

    def __post_init__(self):
        if not 0.0 <= self.soc <= 1.0:
            raise ValueError(f"soc must be in [0, 1], got {self.soc}")


def coulomb_step(
    state: SocState,
    i_pack: float,
    dt: float,
    capacity_ah: float,
    eta_charge: float = 1.0,
) -> SocState:
    """Advance SOC one step under pack current ``i_pack`` (charging positive).

    ``eta_charge`` (charge acceptance) scales charging coulombs only;
    discharge is counted at unity. Raises ValueError for non-positive ``dt``
    or ``capacity_ah``, or ``eta_charge`` outside (0, 1].
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if capacity_ah <= 0:
        raise ValueError(f"capacity_ah must be > 0, got {capacity_ah}")
    if not 0.0 < eta_charge <= 1.0:
        raise ValueError(f"eta_charge must be in (0, 1], got {eta_charge}")

    eta = eta_charge if i_pack > 0 else 1.0
    unclamped = state.soc + eta * i_pack * dt / (3600.0 * capacity_ah)
    return SocState(
        soc=min(1.0, max(0.0, unclamped)),
        saturated_high=unclamped > 1.0,
        saturated_low=unclamped < 0.0,
    )
