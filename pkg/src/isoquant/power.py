"""Power accounting: per-step primary-side draw of the quantizer ladder,
trace summaries, and the closed-form budget comparison against a classic
isolation-amplifier telemetry chain.

The ladder's draw is one optocoupler forward current through the full
primary voltage per conducting channel, which is the whole point of the
one-hot scheme: in steady state that is a single channel. The comparison
arithmetic says the ladder needs a bit under a tenth of the amplifier
chain's power once the amplifier's 10x divider bias rule and its supplemental
converter are accounted for.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ladder import LadderConfig


@dataclass(frozen=True)
class IsoAmpBudget:
    """Operating point of an isolation-amplifier telemetry chain.

    Parameters
    ----------
    v_pri : float
        Monitored primary-side voltage (V).
    i_b : float
        Amplifier input bias current (A); the sense divider carries 10x this.
    v_iso : float
        Output of the supplemental converter feeding the amplifier's primary
        side (V).
    i_pri : float
        Amplifier primary-side supply current (A).
    eta : float
        Supplemental converter efficiency, in (0, 1].
    v_sec, i_sec : float
        Secondary-side supply voltage (V) and load current (A).
    """

    v_pri: float
    i_b: float
    v_iso: float
    i_pri: float
    eta: float
    v_sec: float
    i_sec: float

    def __post_init__(self):
        if not 0 < self.eta <= 1:
            raise ValueError("eta must lie in (0, 1]")
        for name in ("v_pri", "i_b", "v_iso", "i_pri", "v_sec", "i_sec"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class QuantizerBudget:
    """Operating point of the quantizer ladder for the same comparison.

    ``i_zf`` is the greater of the Zener knee current and the optocoupler
    LED forward current, whichever actually sets the channel draw.
    """

    v_pri: float
    i_zf: float
    v_sec: float
    i_out: float

    def __post_init__(self):
        for name in ("v_pri", "i_zf", "v_sec", "i_out"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class PowerReport:
    """Primary-power summary of a simulation trace."""

    mean_primary_power: float
    peak_primary_power: float
    spike_count: int
    steady_band: tuple[float, float]

    def to_text(self) -> str:
        lo, hi = self.steady_band
        return "\n".join(
            [
                f"mean primary power:  {self.mean_primary_power:.6g} W",
                f"peak primary power:  {self.peak_primary_power:.6g} W",
                f"transition spikes:   {self.spike_count}",
                f"steady-state band:   [{lo:.6g}, {hi:.6g}] W",
            ]
        )

    def to_csv(self) -> str:
        lo, hi = self.steady_band
        rows = [
            "metric,value,unit",
            f"mean_primary_power,{self.mean_primary_power:.9g},W",
            f"peak_primary_power,{self.peak_primary_power:.9g},W",
            f"spike_count,{self.spike_count},1",
            f"steady_band_min,{lo:.9g},W",
            f"steady_band_max,{hi:.9g},W",
        ]
        return "\n".join(rows) + "\n"


def instantaneous_primary_power(
    v_pri: float, conducting, config: LadderConfig
) -> float:
    """Primary draw right now: v_pri times each conducting channel's I_f.

    Two entries in ``conducting`` is the momentary overlap of a level
    transition and shows up as a power spike.
    """
    total_current = sum(
        config.channel(level).opto.forward_current for level in conducting
    )
    return v_pri * total_current


def iso_amp_total_power(b: IsoAmpBudget) -> float:
    """Total amplifier-chain power: 10x-biased divider, converter, load."""
    return b.v_pri * 10.0 * b.i_b + b.v_iso * b.i_pri / b.eta + b.v_sec * b.i_sec


def quantizer_total_power(b: QuantizerBudget) -> float:
    """Total ladder power: one channel's primary draw plus the output load."""
    return b.v_pri * b.i_zf + b.v_sec * b.i_out


def power_ratio(
    iso: IsoAmpBudget, quant: QuantizerBudget, neglect_secondary: bool = True
) -> float:
    """Quantizer power over amplifier power.

    With ``neglect_secondary`` the secondary-side terms drop out (valid when
    v_pri*i_zf dominates v_sec*i_out) and the ratio collapses to

        1 / (10 + (v_iso*i_pri/eta) / (v_pri*i_zf))

    assuming equal bias currents on both sides. Otherwise the full quotient
    of the two totals is returned.
    """
    if neglect_secondary:
        primary = quant.v_pri * quant.i_zf
        if primary == 0:
            raise ZeroDivisionError("v_pri * i_zf is zero; simplified ratio undefined")
        return 1.0 / (10.0 + (iso.v_iso * iso.i_pri / iso.eta) / primary)
    denominator = iso_amp_total_power(iso)
    if denominator == 0:
        raise ZeroDivisionError("isolation-amplifier total power is zero")
    return quantizer_total_power(quant) / denominator


def summarize_power(trace) -> PowerReport:
    """Summarize the primary-power column of a simulation trace.

    Spikes are maximal contiguous runs of overlap rows (two conductors);
    the steady band is the (min, max) of power over non-overlap rows only.
    """
    p = np.asarray(trace.primary_power, dtype=float)
    overlap = np.asarray(trace.in_transition, dtype=bool)
    if p.size == 0:
        raise ValueError("trace is empty")
    flags = overlap.astype(int)
    rising = int(flags[0]) + int(np.count_nonzero(np.diff(flags) == 1))
    steady = p[~overlap]
    band = (float(steady.min()), float(steady.max())) if steady.size else (0.0, 0.0)
    return PowerReport(
        mean_primary_power=float(p.mean()),
        peak_primary_power=float(p.max()),
        spike_count=rising,
        steady_band=band,
    )
