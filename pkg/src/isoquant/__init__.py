"""Behavioral simulator of an isolated multilevel quantizer.

The device quantizes a high primary-side bus voltage with a ladder of
Zener-thresholded optocoupler channels. Only the highest channel whose
threshold the bus exceeds conducts (an analog one-hot code), so the
primary-side draw stays at a single LED's worth of current; a Sallen-Key
low-pass on the secondary side smooths the spikes that channel hand-offs
produce. The package models the ladder, the encoding, the filter, the
power accounting, and the end-to-end tracking experiment.
"""

__version__ = "0.1.0"

from .devices import Optocoupler, Transistor, ZenerStack
from .encoding import OneHotViolationError, OneHotWord, one_hot_decode, one_hot_encode
from .engine import (
    SimConfig,
    SimTrace,
    TrackingMetrics,
    default_config,
    simulate,
    tracking_metrics,
    write_trace_csv,
)
from .filters import BiquadFilter, FilterDesign, design_sallen_key
from .ladder import (
    ChannelSpec,
    LadderConfig,
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
from .power import (
    IsoAmpBudget,
    PowerReport,
    QuantizerBudget,
    instantaneous_primary_power,
    iso_amp_total_power,
    power_ratio,
    quantizer_total_power,
    summarize_power,
)
from .signals import BusTrace, constant, load_trace, ramp, random_walk_bus, write_trace
