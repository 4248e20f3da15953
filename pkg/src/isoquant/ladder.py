"""The quantizer core: an ordered set of Zener-thresholded channels where the
highest conducting channel wins and turns every lower channel off.

A channel n conducts when the primary-side voltage reaches its threshold.
The turnoff cascade leaves exactly one conductor in steady state, which is
what makes the output a one-hot code. Switching between levels is not
instantaneous: for a configurable overlap window both the outgoing and the
incoming channel conduct, which is where the primary-side current spikes
come from.

``LadderConfig`` is immutable and shareable; ``LadderState`` is a small value
advanced by the pure function :func:`step_ladder`, so a simulation can be
replayed or forked at any step.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .devices import Optocoupler, ZenerStack, diode_or
from .encoding import OneHotViolationError, OneHotWord, one_hot_encode

#: Defaults for the 8-channel reference ladder. The lowest threshold sits at
#: the secondary converter's undervoltage lockout region; below it there is
#: nothing to report because the telemetry consumer itself is unpowered.
DEFAULT_CHANNEL_COUNT = 8
DEFAULT_MIN_THRESHOLD = 66.0
DEFAULT_THRESHOLD_SPACING = 10.0
DEFAULT_V_ADC_MAX = 5.0
DEFAULT_DIODE_DROP = 0.3
DEFAULT_OVERLAP_TIME = 1e-3
DEFAULT_FORWARD_CURRENT = 1e-3
DEFAULT_CTR = 1.0


@dataclass(frozen=True)
class ChannelSpec:
    """One quantizer channel: threshold stack, isolator, and nominal output."""

    index: int
    zener: ZenerStack
    opto: Optocoupler
    output_level_voltage: float


@dataclass(frozen=True)
class LadderConfig:
    """Ordered channel set plus the global electrical parameters.

    Channel n's nominal output is v_adc_max * n / N so the top level lands
    exactly on the downstream ADC's full scale.
    """

    channels: tuple[ChannelSpec, ...]
    v_adc_max: float = DEFAULT_V_ADC_MAX
    diode_drop: float = DEFAULT_DIODE_DROP
    overlap_time: float = DEFAULT_OVERLAP_TIME

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(self.channels))
        if len(self.channels) < 1:
            raise ValueError("a ladder needs at least one channel")
        if self.v_adc_max <= 0:
            raise ValueError("v_adc_max must be positive")
        if self.diode_drop < 0:
            raise ValueError("diode_drop must be non-negative")
        if self.overlap_time < 0:
            raise ValueError("overlap_time must be non-negative")
        n_total = len(self.channels)
        for position, ch in enumerate(self.channels, start=1):
            if ch.index != position:
                raise ValueError(
                    f"channel at position {position} carries index {ch.index}"
                )
            nominal = self.v_adc_max * position / n_total
            if abs(ch.output_level_voltage - nominal) > 1e-9 * self.v_adc_max:
                raise ValueError(
                    f"channel {position} output {ch.output_level_voltage} V "
                    f"breaks the v_adc_max*n/N rule (expected {nominal} V)"
                )
        thresholds = [ch.zener.breakdown_voltage for ch in self.channels]
        if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError("channel thresholds must strictly increase")
        object.__setattr__(self, "_thresholds", tuple(thresholds))

    @property
    def n(self) -> int:
        return len(self.channels)

    @property
    def thresholds(self) -> tuple[float, ...]:
        return self._thresholds

    def channel(self, level: int) -> ChannelSpec:
        """Channel for a 1-based level index."""
        if not 1 <= level <= self.n:
            raise ValueError(f"level {level} out of range 1..{self.n}")
        return self.channels[level - 1]

    @property
    def scale_factor(self) -> float:
        """Top threshold over ADC full scale, the ladder's overall scaling."""
        return self.thresholds[-1] / self.v_adc_max


@dataclass(frozen=True)
class LadderState:
    """Which channel conducts now, plus transition bookkeeping.

    In steady state ``previous_channel == active_channel``. During a
    transition both are conducting and ``time_in_transition`` counts toward
    the configured overlap window. Level 0 means no conduction.
    """

    active_channel: int = 0
    previous_channel: int = 0
    time_in_transition: float = 0.0

    @property
    def in_transition(self) -> bool:
        return self.previous_channel != self.active_channel


def make_ladder(
    thresholds,
    v_adc_max: float = DEFAULT_V_ADC_MAX,
    diode_drop: float = DEFAULT_DIODE_DROP,
    overlap_time: float = DEFAULT_OVERLAP_TIME,
    forward_current: float = DEFAULT_FORWARD_CURRENT,
    ctr: float = DEFAULT_CTR,
) -> LadderConfig:
    """Build a ladder from an ascending threshold list.

    Pull-down resistors are sized so each channel's optocoupler output equals
    its nominal v_adc_max * n / N level.
    """
    thresholds = list(thresholds)
    n_total = len(thresholds)
    channels = []
    for position, v_z in enumerate(thresholds, start=1):
        nominal = v_adc_max * position / n_total
        channels.append(
            ChannelSpec(
                index=position,
                zener=ZenerStack(breakdown_voltage=v_z),
                opto=Optocoupler(
                    forward_current=forward_current,
                    ctr=ctr,
                    pull_down_resistance=nominal / (ctr * forward_current),
                ),
                output_level_voltage=nominal,
            )
        )
    return LadderConfig(
        channels=tuple(channels),
        v_adc_max=v_adc_max,
        diode_drop=diode_drop,
        overlap_time=overlap_time,
    )


def uniform_ladder(
    n_channels: int = DEFAULT_CHANNEL_COUNT,
    min_threshold: float = DEFAULT_MIN_THRESHOLD,
    spacing: float = DEFAULT_THRESHOLD_SPACING,
    **kwargs,
) -> LadderConfig:
    """Ladder with evenly spaced thresholds starting at min_threshold."""
    if n_channels < 1:
        raise ValueError("n_channels must be at least 1")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    return make_ladder(
        [min_threshold + spacing * k for k in range(n_channels)], **kwargs
    )


def default_ladder() -> LadderConfig:
    """The 8-channel reference configuration: 66..136 V in 10 V steps."""
    return uniform_ladder()


def select_level(v_pri: float, config: LadderConfig) -> int:
    """Largest level whose threshold the input reaches, 0 if none.

    This is the steady-state winner after the turnoff cascade settles; an
    input exactly on a threshold selects that level. Inputs above the top
    threshold clamp to level N and negative inputs behave as level 0.
    """
    if not math.isfinite(v_pri):
        raise ValueError(f"v_pri must be finite, got {v_pri}")
    return bisect_right(config.thresholds, v_pri)


def step_ladder(
    state: LadderState, v_pri: float, dt: float, config: LadderConfig
) -> LadderState:
    """Advance the ladder by one time step of duration dt.

    A change of selected level starts an overlap window during which the old
    and new channels both conduct. If the target level changes again before
    the window closes, the transition retargets and its timer resets; the
    cascade never walks intermediate levels, so at most two channels conduct
    at any instant.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    target = select_level(v_pri, config)

    if target != state.active_channel:
        # begin or retarget: previous becomes whichever level was dominant
        state = LadderState(
            active_channel=target,
            previous_channel=state.active_channel,
            time_in_transition=0.0,
        )
    elif not state.in_transition:
        return state

    elapsed = state.time_in_transition + dt
    if elapsed >= config.overlap_time:
        return LadderState(target, target, 0.0)
    return LadderState(target, state.previous_channel, elapsed)


def conducting_set(state: LadderState, config: LadderConfig) -> frozenset[int]:
    """Levels currently conducting; empty below the minimum channel."""
    for level in (state.active_channel, state.previous_channel):
        if not 0 <= level <= config.n:
            raise ValueError(f"state level {level} out of range 0..{config.n}")
    return frozenset({state.active_channel, state.previous_channel} - {0})


def raw_output(state: LadderState, config: LadderConfig) -> float:
    """Diode-OR'd secondary output over every conducting channel."""
    candidates = [
        config.channel(level).output_level_voltage
        for level in conducting_set(state, config)
    ]
    return diode_or(candidates, config.diode_drop)


def one_hot_word(state: LadderState, config: LadderConfig) -> OneHotWord:
    """The state's one-hot word, valid only outside overlap windows."""
    if len(conducting_set(state, config)) > 1:
        raise OneHotViolationError(
            f"channels {sorted(conducting_set(state, config))} overlap; "
            "the word is not one-hot during a transition"
        )
    return one_hot_encode(state.active_channel, config.n)
