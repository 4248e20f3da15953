"""Idealized behavioral models of the discrete parts a quantizer channel is
built from: Zener threshold stacks, the series-pass transistor current
relation, optocoupler signal transfer, and diode-OR output combining.

All types are immutable values and all operations are pure functions, so
everything here can be shared freely between threads. No electrical network
solving happens at this level; each model reduces a component to the one
relation that matters for channel behavior.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ZenerStack:
    """Reverse-biased diode stack with a sharp conduction threshold.

    ``dynamic_resistance`` is the IV slope above breakdown. It only matters
    when series-pass current limiting is disabled, which is not the default
    operating mode, so it carries a plausible placeholder value.
    """

    breakdown_voltage: float
    dynamic_resistance: float = 10.0

    def __post_init__(self):
        if self.breakdown_voltage <= 0:
            raise ValueError("breakdown_voltage must be positive")
        if self.dynamic_resistance <= 0:
            raise ValueError("dynamic_resistance must be positive")


@dataclass(frozen=True)
class Optocoupler:
    """LED-driven isolator: output voltage is ctr * forward_current * R_pull."""

    forward_current: float
    ctr: float
    pull_down_resistance: float

    def __post_init__(self):
        if self.forward_current <= 0:
            raise ValueError("forward_current must be positive")
        if self.ctr <= 0:
            raise ValueError("ctr must be positive")
        if self.pull_down_resistance <= 0:
            raise ValueError("pull_down_resistance must be positive")


@dataclass(frozen=True)
class Transistor:
    """Bipolar transistor reduced to its forward current gain."""

    beta: float = 100.0

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")


def zener_conducts(v_applied: float, stack: ZenerStack) -> bool:
    """True when the applied voltage reaches the stack's breakdown voltage.

    The boundary case counts as conducting: a stack biased exactly at its
    breakdown voltage is on.
    """
    return v_applied >= stack.breakdown_voltage


def base_current(collector_current: float, transistor: Transistor) -> float:
    """Base current needed to support a given collector current (I_C / beta)."""
    if collector_current < 0:
        raise ValueError("collector_current must be non-negative")
    return collector_current / transistor.beta


def opto_output_voltage(opto: Optocoupler) -> float:
    """Secondary-side voltage developed across the pull-down resistor."""
    return opto.ctr * opto.forward_current * opto.pull_down_resistance


def diode_or(candidate_voltages, diode_drop: float) -> float:
    """Combine candidate outputs through an ORing diode network.

    The highest candidate wins, minus one diode drop; the result is clamped
    at zero and an empty candidate list yields zero.
    """
    if diode_drop < 0:
        raise ValueError("diode_drop must be non-negative")
    candidates = list(candidate_voltages)
    if not candidates:
        return 0.0
    return max(0.0, max(candidates) - diode_drop)
