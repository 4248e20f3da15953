"""Component models: thresholds, current gain, opto transfer, diode OR."""

import numpy as np
import pytest

from isoquant.devices import (
    Optocoupler,
    Transistor,
    ZenerStack,
    base_current,
    diode_or,
    opto_output_voltage,
    zener_conducts,
)


class TestZenerConducts:
    def test_above_threshold_conducts(self):
        assert zener_conducts(120.0, ZenerStack(116.0))

    def test_zero_volts_never_conducts(self):
        assert not zener_conducts(0.0, ZenerStack(66.0))

    def test_exact_threshold_counts_as_conducting(self):
        # boundary rule confirmed by sweeping across the threshold
        stack = ZenerStack(116.0)
        sweep = [115.9, 115.99, 116.0, 116.01, 116.1]
        assert [zener_conducts(v, stack) for v in sweep] == [
            False, False, True, True, True,
        ]

    def test_monotone_in_applied_voltage(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            stack = ZenerStack(float(rng.uniform(1.0, 200.0)))
            v = float(rng.uniform(-50.0, 250.0))
            if zener_conducts(v, stack):
                assert zener_conducts(v + float(rng.uniform(0, 100.0)), stack)

    def test_rejects_nonpositive_breakdown(self):
        with pytest.raises(ValueError):
            ZenerStack(0.0)
        with pytest.raises(ValueError):
            ZenerStack(66.0, dynamic_resistance=-1.0)


class TestBaseCurrent:
    def test_reference_gain(self):
        assert base_current(1e-4, Transistor(beta=100.0)) == pytest.approx(1e-6)

    def test_zero_in_zero_out(self):
        assert base_current(0.0, Transistor(beta=100.0)) == 0.0

    def test_division_oracle(self):
        # oracle: plain quotient 2.5e-3 / 50 = 5e-5
        assert base_current(2.5e-3, Transistor(beta=50.0)) == pytest.approx(5e-5)

    def test_linear_in_collector_current(self):
        t = Transistor(beta=80.0)
        rng = np.random.default_rng(11)
        for _ in range(100):
            i = float(rng.uniform(0, 1e-2))
            a = float(rng.uniform(0, 10.0))
            assert base_current(a * i, t) == pytest.approx(a * base_current(i, t))

    def test_negative_collector_current_rejected(self):
        with pytest.raises(ValueError):
            base_current(-1e-6, Transistor())


class TestOptoOutputVoltage:
    def test_full_scale_product(self):
        # oracle: 1.0 * 1e-3 * 5000 = 5.0, the top level at ADC full scale
        opto = Optocoupler(forward_current=1e-3, ctr=1.0, pull_down_resistance=5000.0)
        assert opto_output_voltage(opto) == pytest.approx(5.0)

    def test_half_ctr_product(self):
        # oracle: 0.5 * 1e-3 * 2500 = 1.25
        opto = Optocoupler(forward_current=1e-3, ctr=0.5, pull_down_resistance=2500.0)
        assert opto_output_voltage(opto) == pytest.approx(1.25)

    def test_no_drive_no_output(self):
        # zero forward current is not a valid device, so check the limit
        tiny = Optocoupler(forward_current=1e-30, ctr=1.0, pull_down_resistance=5000.0)
        assert opto_output_voltage(tiny) == pytest.approx(0.0, abs=1e-20)

    def test_linear_in_each_parameter(self):
        base = Optocoupler(forward_current=2e-3, ctr=0.8, pull_down_resistance=1000.0)
        v0 = opto_output_voltage(base)
        for field, value in (
            ("forward_current", 4e-3),
            ("ctr", 1.6),
            ("pull_down_resistance", 2000.0),
        ):
            kwargs = {
                "forward_current": base.forward_current,
                "ctr": base.ctr,
                "pull_down_resistance": base.pull_down_resistance,
            }
            kwargs[field] = value
            assert opto_output_voltage(Optocoupler(**kwargs)) == pytest.approx(2 * v0)


class TestDiodeOr:
    def test_single_candidate_minus_drop(self):
        assert diode_or([5.0], 0.3) == pytest.approx(4.7)

    def test_empty_is_zero(self):
        assert diode_or([], 0.3) == 0.0

    def test_max_wins_with_zero_drop(self):
        assert diode_or([1.25, 5.0], 0.0) == 5.0

    def test_never_exceeds_max_and_never_negative(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            n = int(rng.integers(1, 6))
            candidates = list(rng.uniform(0, 6.0, n))
            drop = float(rng.uniform(0, 8.0))
            out = diode_or(candidates, drop)
            assert 0.0 <= out <= max(candidates)

    def test_negative_drop_rejected(self):
        with pytest.raises(ValueError):
            diode_or([5.0], -0.1)
