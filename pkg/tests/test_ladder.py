"""Quantizer ladder: level selection, turnoff-cascade transitions, outputs."""

import math

import numpy as np
import pytest

from isoquant.encoding import OneHotViolationError
from isoquant.ladder import (
    LadderState,
    conducting_set,
    default_ladder,
    make_ladder,
    one_hot_word,
    raw_output,
    select_level,
    step_ladder,
    uniform_ladder,
)


def brute_force_level(v, config):
    """Independent oracle: linear scan over all thresholds."""
    winner = 0
    for n in range(1, config.n + 1):
        if v >= config.channel(n).zener.breakdown_voltage:
            winner = n
    return winner


@pytest.fixture(scope="module")
def ladder():
    return default_ladder()


class TestDefaultLadder:
    def test_anchor_thresholds(self, ladder):
        assert ladder.thresholds[7] == 136.0
        assert ladder.thresholds[5] == 116.0
        assert ladder.thresholds[0] == 66.0

    def test_spacing_is_the_unique_uniform_grid(self, ladder):
        # oracle: least-squares line through the anchored points (1, 66),
        # (6, 116), (8, 136) has slope 10 and intercept 56; the full grid
        # must be that line evaluated at 1..8
        slope, intercept = np.polyfit([1, 6, 8], [66.0, 116.0, 136.0], 1)
        assert slope == pytest.approx(10.0)
        for n, threshold in enumerate(ladder.thresholds, start=1):
            assert threshold == pytest.approx(slope * n + intercept)

    def test_output_levels_follow_n_over_n_rule(self, ladder):
        assert ladder.v_adc_max == 5.0
        for n in range(1, 9):
            assert ladder.channel(n).output_level_voltage == pytest.approx(5.0 * n / 8)

    def test_scale_factor_derivable(self, ladder):
        assert ladder.scale_factor == pytest.approx(136.0 / 5.0)


class TestConfigValidation:
    def test_thresholds_must_increase(self):
        with pytest.raises(ValueError):
            make_ladder([66.0, 66.0, 86.0])

    def test_empty_ladder_rejected(self):
        with pytest.raises(ValueError):
            make_ladder([])

    def test_single_channel_ladder_is_legal(self):
        one = make_ladder([66.0])
        assert one.n == 1
        assert one.channel(1).output_level_voltage == pytest.approx(5.0)

    def test_negative_overlap_rejected(self):
        with pytest.raises(ValueError):
            make_ladder([66.0], overlap_time=-1e-3)


class TestSelectLevel:
    def test_mid_band(self, ladder):
        assert select_level(120.0, ladder) == 6

    def test_below_minimum(self, ladder):
        assert select_level(10.0, ladder) == 0

    def test_above_top_clamps(self, ladder):
        assert select_level(140.0, ladder) == brute_force_level(140.0, ladder) == 8

    def test_exact_threshold_selects_that_level(self, ladder):
        for n, v in enumerate(ladder.thresholds, start=1):
            assert select_level(v, ladder) == n

    def test_negative_input_is_level_zero(self, ladder):
        assert select_level(-5.0, ladder) == 0

    def test_agrees_with_linear_scan_oracle(self, ladder):
        rng = np.random.default_rng(2024)
        for v in rng.uniform(-20.0, 170.0, 10_000):
            assert select_level(float(v), ladder) == brute_force_level(v, ladder)

    def test_monotone_staircase(self, ladder):
        rng = np.random.default_rng(5)
        for config in (ladder, uniform_ladder(3, 10.0, 7.5), make_ladder([1.0, 2.0, 50.0])):
            vs = np.sort(rng.uniform(-10.0, 200.0, 2000))
            levels = [select_level(float(v), config) for v in vs]
            assert all(a <= b for a, b in zip(levels, levels[1:]))

    def test_non_finite_input_rejected(self, ladder):
        with pytest.raises(ValueError):
            select_level(float("nan"), ladder)
        with pytest.raises(ValueError):
            select_level(float("inf"), ladder)


class TestStepLadder:
    def test_constant_input_no_transition(self, ladder):
        state = LadderState(6, 6, 0.0)
        assert step_ladder(state, 120.0, 1e-4, ladder) == state

    def test_overlap_during_transition(self, ladder):
        state = step_ladder(LadderState(6, 6, 0.0), 130.0, 1e-4, ladder)
        assert conducting_set(state, ladder) == {6, 7}

    def test_transition_completes_after_overlap_time(self, ladder):
        # two-stage oracle: the target is select_level(130) = 7, and after
        # overlap_time of accumulated dt only that level conducts
        assert select_level(130.0, ladder) == 7
        state = LadderState(6, 6, 0.0)
        steps = math.ceil(ladder.overlap_time / 1e-4)
        for _ in range(steps):
            state = step_ladder(state, 130.0, 1e-4, ladder)
        assert state == LadderState(7, 7, 0.0)
        assert conducting_set(state, ladder) == {7}

    def test_transition_takes_exactly_ceil_overlap_over_dt_steps(self, ladder):
        for dt in (1e-4, 3e-4, 1e-3, 7e-4):
            expected = math.ceil(ladder.overlap_time / dt)
            state = LadderState(6, 6, 0.0)
            taken = 0
            while True:
                state = step_ladder(state, 130.0, dt, ladder)
                taken += 1
                if not state.in_transition:
                    break
            assert taken == expected

    def test_zero_overlap_switches_instantly(self):
        fast = make_ladder([66.0, 76.0], overlap_time=0.0)
        state = step_ladder(LadderState(1, 1, 0.0), 80.0, 1e-4, fast)
        assert state == LadderState(2, 2, 0.0)

    def test_retarget_resets_timer_and_tracks_latest_pair(self, ladder):
        state = step_ladder(LadderState(6, 6, 0.0), 130.0, 1e-4, ladder)  # 6 -> 7
        state = step_ladder(state, 140.0, 1e-4, ladder)  # retarget to 8
        assert state.active_channel == 8
        assert state.previous_channel == 7
        assert state.time_in_transition == pytest.approx(1e-4)
        assert conducting_set(state, ladder) == {7, 8}

    def test_multi_level_jump_single_window(self, ladder):
        # 1 -> 8 in one hop: the cascade never walks intermediate levels
        state = step_ladder(LadderState(1, 1, 0.0), 150.0, 1e-4, ladder)
        assert conducting_set(state, ladder) == {1, 8}

    def test_timer_never_exceeds_overlap(self, ladder):
        state = LadderState(6, 6, 0.0)
        for _ in range(25):
            state = step_ladder(state, 130.0, 1e-4, ladder)
            assert state.time_in_transition <= ladder.overlap_time

    def test_nonpositive_dt_rejected(self, ladder):
        with pytest.raises(ValueError):
            step_ladder(LadderState(), 120.0, 0.0, ladder)


class TestConductingSet:
    def test_steady_single_conductor(self, ladder):
        assert conducting_set(LadderState(6, 6, 0.0), ladder) == {6}

    def test_transition_pair(self, ladder):
        assert conducting_set(LadderState(7, 6, 1e-4), ladder) == {6, 7}

    def test_level_zero_conducts_nothing(self, ladder):
        assert conducting_set(LadderState(0, 0, 0.0), ladder) == frozenset()

    def test_turn_on_from_zero_has_one_conductor(self, ladder):
        assert conducting_set(LadderState(4, 0, 1e-4), ladder) == {4}


class TestRawOutput:
    def test_top_level_full_scale_without_drop(self):
        cfg = uniform_ladder(diode_drop=0.0)
        assert raw_output(LadderState(8, 8, 0.0), cfg) == pytest.approx(5.0)

    def test_no_conduction_no_output(self, ladder):
        assert raw_output(LadderState(0, 0, 0.0), ladder) == 0.0

    def test_mid_level_without_drop(self):
        cfg = uniform_ladder(diode_drop=0.0)
        assert raw_output(LadderState(4, 4, 0.0), cfg) == pytest.approx(2.5)

    def test_default_drop_subtracts(self, ladder):
        assert raw_output(LadderState(8, 8, 0.0), ladder) == pytest.approx(4.7)

    def test_transition_outputs_higher_level(self, ladder):
        # diode OR: the larger of the two overlapping outputs wins
        both = raw_output(LadderState(7, 6, 1e-4), ladder)
        assert both == pytest.approx(5.0 * 7 / 8 - 0.3)

    def test_bounded_by_adc_full_scale(self, ladder):
        for level in range(ladder.n + 1):
            out = raw_output(LadderState(level, level, 0.0), ladder)
            assert 0.0 <= out <= ladder.v_adc_max


class TestOneHotWord:
    def test_steady_state_word(self, ladder):
        assert str(one_hot_word(LadderState(3, 3, 0.0), ladder)) == "00000100"

    def test_level_zero_word(self, ladder):
        assert str(one_hot_word(LadderState(0, 0, 0.0), ladder)) == "00000000"

    def test_overlap_raises(self, ladder):
        with pytest.raises(OneHotViolationError):
            one_hot_word(LadderState(7, 6, 1e-4), ladder)


class TestQuantizationProperties:
    def test_error_bound_inside_designed_range(self, ladder):
        # the reconstruction for a level is its threshold, so the error must
        # stay inside one level spacing across the designed range
        rng = np.random.default_rng(31)
        spacing = 10.0
        for v in rng.uniform(66.0, 136.0 + spacing - 1e-9, 5000):
            level = select_level(float(v), ladder)
            assert level >= 1
            err = v - ladder.thresholds[level - 1]
            assert 0.0 <= err < spacing

    def test_one_hot_steady_state_reached_for_any_constant_input(self, ladder):
        rng = np.random.default_rng(77)
        dt = 2e-4
        hold_steps = math.ceil(ladder.overlap_time / dt) + 1
        for v in rng.uniform(-10.0, 170.0, 500):
            state = LadderState(int(rng.integers(0, 9)), int(rng.integers(0, 9)), 0.0)
            for _ in range(hold_steps):
                state = step_ladder(state, float(v), dt, ladder)
            assert len(conducting_set(state, ladder)) <= 1
            assert state.active_channel == select_level(float(v), ladder)
