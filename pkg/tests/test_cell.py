"""Cell model: parameter validation, OCV interpolation, terminal voltage."""

import numpy as np
import pytest

from packsim.cell import (
    DEFAULT_OCV_TABLE,
    TESLA_MODEL_Y_CELL,
    CellSpec,
    nominal_voltage,
    ocv,
    terminal_voltage,
)


class TestNominalVoltage:
    def test_reference_cell(self):
        """86.5 Wh / 23.35 Ah = 3.7045 V."""
        assert nominal_voltage(TESLA_MODEL_Y_CELL) == pytest.approx(86.5 / 23.35)
        assert nominal_voltage(TESLA_MODEL_Y_CELL) == pytest.approx(3.7045, abs=1e-4)

    def test_identity_ratio(self):
        cell = CellSpec(energy=1.0, capacity=1.0)
        assert nominal_voltage(cell) == pytest.approx(1.0)

    def test_direct_division(self):
        cell = CellSpec(energy=74.0, capacity=20.0)
        assert nominal_voltage(cell) == pytest.approx(3.70)

    def test_non_positive_capacity_rejected(self):
        with pytest.raises(ValueError, match="capacity"):
            CellSpec(capacity=0.0)
        with pytest.raises(ValueError, match="capacity"):
            CellSpec(capacity=-1.0)


class TestOCV:
    def test_endpoints(self):
        assert ocv(TESLA_MODEL_Y_CELL, 0.0) == pytest.approx(3.00)
        assert ocv(TESLA_MODEL_Y_CELL, 1.0) == pytest.approx(4.20)

    def test_midpoint_interpolation(self):
        """soc=0.5 lies halfway between knots (0.4, 3.62) and (0.6, 3.72)."""
        assert ocv(TESLA_MODEL_Y_CELL, 0.5) == pytest.approx(3.67)

    def test_exact_at_every_knot(self):
        for soc, volts in DEFAULT_OCV_TABLE:
            assert ocv(TESLA_MODEL_Y_CELL, soc) == volts

    def test_domain_errors(self):
        with pytest.raises(ValueError, match="soc"):
            ocv(TESLA_MODEL_Y_CELL, -0.01)
        with pytest.raises(ValueError, match="soc"):
            ocv(TESLA_MODEL_Y_CELL, 1.01)

    def test_non_decreasing_in_soc(self):
        """OCV must never decrease as SOC rises (1,000 random pairs)."""
        rng = np.random.default_rng(42)
        pairs = rng.uniform(0.0, 1.0, size=(1000, 2))
        for a, b in pairs:
            lo, hi = min(a, b), max(a, b)
            assert ocv(TESLA_MODEL_Y_CELL, lo) <= ocv(TESLA_MODEL_Y_CELL, hi) + 1e-15


class TestTerminalVoltage:
    def test_zero_current_is_ocv(self):
        assert terminal_voltage(TESLA_MODEL_Y_CELL, 0.5, 0.0) == pytest.approx(3.67)

    def test_charging_raises_voltage(self):
        # 3.67 + 3 * 0.02 = 3.73
        assert terminal_voltage(TESLA_MODEL_Y_CELL, 0.5, 3.0) == pytest.approx(3.73)

    def test_discharging_sags_voltage(self):
        # 3.67 - 3 * 0.02 = 3.61
        assert terminal_voltage(TESLA_MODEL_Y_CELL, 0.5, -3.0) == pytest.approx(3.61)

    def test_affine_in_current(self):
        """tv(s, i) - tv(s, 0) == i * r for random soc and current."""
        rng = np.random.default_rng(7)
        for _ in range(1000):
            soc = rng.uniform(0.0, 1.0)
            i = rng.uniform(-50.0, 50.0)
            lhs = terminal_voltage(TESLA_MODEL_Y_CELL, soc, i) - terminal_voltage(
                TESLA_MODEL_Y_CELL, soc, 0.0
            )
            assert lhs == pytest.approx(i * TESLA_MODEL_Y_CELL.r_internal, abs=1e-12)

    def test_propagates_domain_error(self):
        with pytest.raises(ValueError):
            terminal_voltage(TESLA_MODEL_Y_CELL, 1.5, 0.0)


class TestCellSpecValidation:
    def test_reference_values(self):
        c = TESLA_MODEL_Y_CELL
        assert (c.radius, c.height, c.mass) == (0.023, 0.08, 0.355)
        assert (c.capacity, c.energy) == (23.35, 86.5)

    def test_table_must_span_unit_interval(self):
        with pytest.raises(ValueError, match="span"):
            CellSpec(ocv_table=((0.1, 3.0), (1.0, 4.2)))
        with pytest.raises(ValueError, match="span"):
            CellSpec(ocv_table=((0.0, 3.0), (0.9, 4.2)))

    def test_table_soc_strictly_increasing(self):
        with pytest.raises(ValueError, match="increasing"):
            CellSpec(ocv_table=((0.0, 3.0), (0.5, 3.5), (0.5, 3.6), (1.0, 4.2)))

    def test_table_voltage_non_decreasing(self):
        with pytest.raises(ValueError, match="non-decreasing"):
            CellSpec(ocv_table=((0.0, 3.0), (0.5, 4.0), (1.0, 3.9)))

    def test_v_min_above_bottom_of_table_rejected(self):
        with pytest.raises(ValueError, match="v_min"):
            CellSpec(v_min=3.5)

    def test_v_cv_below_table_top_allowed(self):
        # CV may clip below the top OCV knot.
        cell = CellSpec(v_cv=4.0)
        assert cell.v_cv == 4.0

    def test_v_cv_must_exceed_v_min(self):
        with pytest.raises(ValueError, match="v_cv"):
            CellSpec(v_cv=2.0, v_min=2.5)

    def test_negative_resistance_rejected(self):
        with pytest.raises(ValueError, match="r_internal"):
            CellSpec(r_internal=-0.01)

    def test_non_positive_mass_rejected(self):
        with pytest.raises(ValueError, match="mass"):
            CellSpec(mass=0.0)
