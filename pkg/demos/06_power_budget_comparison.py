"""Budget arithmetic: the ladder against an isolation-amplifier chain.

An isolation amplifier needs a 10x-biased sense divider plus its own
galvanically isolated supply from a supplemental converter. The quantizer
ladder needs neither: one channel's Zener/LED current is the whole primary
budget. At 120 V with 100 nA bias-class currents and a worst-case 60%
converter, the ladder draws just under a tenth of the amplifier chain.
"""

from isoquant import (
    IsoAmpBudget,
    QuantizerBudget,
    iso_amp_total_power,
    power_ratio,
    quantizer_total_power,
)

iso = IsoAmpBudget(v_pri=120.0, i_b=1e-7, v_iso=5.0, i_pri=1e-7, eta=0.6,
                   v_sec=5.0, i_sec=0.0)
quant = QuantizerBudget(v_pri=120.0, i_zf=1e-7, v_sec=5.0, i_out=0.0)

print("isolation-amplifier chain:")
print(f"  10x-biased divider: {iso.v_pri * 10 * iso.i_b * 1e6:8.3f} uW")
print(f"  supplemental conv.: {iso.v_iso * iso.i_pri / iso.eta * 1e6:8.3f} uW")
print(f"  total:              {iso_amp_total_power(iso) * 1e6:8.3f} uW")
print("quantizer ladder:")
print(f"  one channel:        {quant.v_pri * quant.i_zf * 1e6:8.3f} uW")
print(f"  total:              {quantizer_total_power(quant) * 1e6:8.3f} uW")
print()

ratio = power_ratio(iso, quant, neglect_secondary=True)
print(f"power ratio (ladder / amplifier): {ratio:.6f} = 1/{1 / ratio:.2f}")
print()

print("sensitivity to converter efficiency:")
print(f"{'eta':>5} {'ratio':>9} {'reciprocal':>11}")
for eta in (0.3, 0.45, 0.6, 0.75, 0.9, 1.0):
    r = power_ratio(
        IsoAmpBudget(120.0, 1e-7, 5.0, 1e-7, eta, 5.0, 0.0), quant
    )
    print(f"{eta:5.2f} {r:9.6f} {1 / r:11.2f}")
print()
print("even a perfect converter leaves the 10x divider bias, so the ratio")
print("never climbs above 1/10.")
