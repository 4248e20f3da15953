"""Discrete-time model of the second-order Sallen-Key low-pass that smooths
channel-transition spikes out of the quantizer output.

The continuous prototype is the standard unity-topology low-pass

    H(s) = G * wc^2 / (s^2 + (wc/Q) * s + wc^2),    wc = 2*pi*fc

realized as a digital biquad via the bilinear transform, pre-warped at fc so
the stated crossover survives discretization exactly. The default design is
fc = 16 Hz, G = 1.1, Q = 0.5 (critically damped: no step overshoot), with
the extra 10% of gain making up for the ORing diode drop.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FilterDesign:
    """Target response of the output filter, independent of realization."""

    crossover_hz: float = 16.0
    gain: float = 1.1
    q: float = 0.5
    sample_interval: float = 1e-4

    def __post_init__(self):
        if self.crossover_hz <= 0:
            raise ValueError("crossover_hz must be positive")
        if self.gain <= 0:
            raise ValueError("gain must be positive")
        if self.q <= 0:
            raise ValueError("q must be positive")
        if self.sample_interval <= 0:
            raise ValueError("sample_interval must be positive")
        if self.crossover_hz >= 0.5 / self.sample_interval:
            raise ValueError(
                f"crossover {self.crossover_hz} Hz is not below the "
                f"{0.5 / self.sample_interval} Hz half-rate"
            )


class BiquadFilter:
    """Second-order section in transposed direct form II.

    Carries two delayed state values, so one instance must be driven by a
    single thread at a time; independent instances are fine in parallel.
    """

    def __init__(self, b0, b1, b2, a1, a2, sample_interval):
        self.b0, self.b1, self.b2 = float(b0), float(b1), float(b2)
        self.a1, self.a2 = float(a1), float(a2)
        self.sample_interval = float(sample_interval)
        self._s1 = 0.0
        self._s2 = 0.0

    def step(self, x: float) -> float:
        """One sample through the biquad difference equation."""
        y = self.b0 * x + self._s1
        self._s1 = self.b1 * x - self.a1 * y + self._s2
        self._s2 = self.b2 * x - self.a2 * y
        return y

    def process(self, xs) -> np.ndarray:
        return np.array([self.step(float(x)) for x in xs])

    def reset(self) -> None:
        self._s1 = 0.0
        self._s2 = 0.0

    def prime(self, x0: float) -> None:
        """Warm start: preload state so a held input x0 already reads settled.

        The first output after priming equals dc_gain * x0, which keeps a
        startup transient out of tracking-error metrics.
        """
        y = self.dc_gain * x0
        self._s1 = y - self.b0 * x0
        self._s2 = self.b2 * x0 - self.a2 * y

    @property
    def dc_gain(self) -> float:
        return (self.b0 + self.b1 + self.b2) / (1.0 + self.a1 + self.a2)

    def poles(self) -> np.ndarray:
        return np.roots([1.0, self.a1, self.a2])

    def frequency_response(self, f: float) -> tuple[float, float]:
        """(magnitude, phase in radians) of the section at frequency f Hz."""
        nyquist = 0.5 / self.sample_interval
        if not 0 <= f <= nyquist:
            raise ValueError(f"f must lie in [0, {nyquist}] Hz")
        z_inv = cmath.exp(-2j * math.pi * f * self.sample_interval)
        h = (self.b0 + self.b1 * z_inv + self.b2 * z_inv**2) / (
            1.0 + self.a1 * z_inv + self.a2 * z_inv**2
        )
        return abs(h), cmath.phase(h)


def design_sallen_key(design: FilterDesign) -> BiquadFilter:
    """Coefficients for the low-pass prototype, bilinear with pre-warp at fc."""
    wc = 2.0 * math.pi * design.crossover_hz
    # pre-warp: choose k so the analog wc lands exactly on the discrete wc
    k = wc / math.tan(wc * design.sample_interval / 2.0)
    norm = k * k + wc * k / design.q + wc * wc
    gw2 = design.gain * wc * wc
    return BiquadFilter(
        b0=gw2 / norm,
        b1=2.0 * gw2 / norm,
        b2=gw2 / norm,
        a1=(2.0 * wc * wc - 2.0 * k * k) / norm,
        a2=(k * k - wc * k / design.q + wc * wc) / norm,
        sample_interval=design.sample_interval,
    )


def analog_magnitude(design: FilterDesign, f: float) -> float:
    """|H(j*2*pi*f)| of the continuous prototype, for response checks."""
    w = 2.0 * math.pi * f
    wc = 2.0 * math.pi * design.crossover_hz
    return abs(
        design.gain * wc * wc / ((1j * w) ** 2 + (wc / design.q) * (1j * w) + wc * wc)
    )
