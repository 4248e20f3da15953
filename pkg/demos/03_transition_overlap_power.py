"""Why the primary-side power spikes during level changes.

Hold the bus at 120 V, then step it to 130 V. The level-6 channel keeps
conducting while level 7 takes over, so for one overlap window (1 ms by
default) the ladder draws two LED currents instead of one. The one-hot word
is undefined for those rows; the trace marks them with '--'.
"""

import numpy as np

from isoquant import BusTrace, default_config, simulate

config = default_config()
bus = BusTrace(sample_interval=0.01, samples=np.array([120.0, 130.0]))
trace = simulate(config, bus)

words = trace.one_hot_column()
print(f"{'t (ms)':>7} {'v_bus':>6} {'level':>5} {'word':>9} {'p_pri (W)':>10}")
interesting = range(95, 115)  # rows around the input step at t = 10 ms
for k in interesting:
    print(
        f"{1e3 * trace.time[k]:7.1f} {trace.bus_voltage[k]:6.1f} "
        f"{trace.level[k]:5d} {words[k]:>9} {trace.primary_power[k]:10.3f}"
    )

overlap_rows = int(np.count_nonzero(trace.in_transition))
print()
print(f"overlap rows: {overlap_rows} of {len(trace)} "
      f"({1e3 * overlap_rows * config.engine_dt:.1f} ms total)")
print(f"steady draw at 120 V: {120 * 1e-3:.3f} W; spike peak: "
      f"{trace.primary_power.max():.3f} W (two channels at once)")
