"""The quantizer's DC transfer curve.

Sweep the primary-side voltage from below the lowest channel to above the
highest and watch the selected level climb one step per 10 V threshold.
Below 66 V nothing conducts: the secondary electronics sit below their
converter's undervoltage lockout there, so that span of the telemetry scale
would be wasted anyway.
"""

import numpy as np

from isoquant import LadderState, default_ladder, raw_output, select_level

ladder = default_ladder()
print(f"{ladder.n} channels, thresholds (V): {ladder.thresholds}")
print(f"ADC full scale: {ladder.v_adc_max} V, ORing diode drop: {ladder.diode_drop} V")
print()

print(f"{'v_in (V)':>9}  {'level':>5}  {'v_out (V)':>9}")
for v in np.arange(55.0, 150.0, 5.0):
    level = select_level(float(v), ladder)
    v_out = raw_output(LadderState(level, level, 0.0), ladder)
    bar = "#" * level
    print(f"{v:9.1f}  {level:5d}  {v_out:9.3f}  {bar}")

print()
sweep = np.arange(0, 1461) * 0.1
levels = np.array([select_level(float(v), ladder) for v in sweep])
steps = [float(sweep[np.argmax(levels >= n)]) for n in range(1, ladder.n + 1)]
print(f"step locations detected by 0.1 V sweep: {steps}")
print(f"monotone: {bool(np.all(np.diff(levels) >= 0))}")
