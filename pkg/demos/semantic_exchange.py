"""Raw frames versus semantic descriptions, and what the saved airtime buys.

The semantic payload is the raw frame shrunk by a fixed ratio; the freed part
of each 30 ms time-division frame goes to sensing.
"""

from jcsc_sim.jcs_link import RfParams, jcs_sweep, linear_to_db
from jcsc_sim.semantics import camvid, cityscapes, efficiency_gain, raw_payload_bits, semantic_payload_bits

for spec in (cityscapes(), camvid()):
    raw, sem = raw_payload_bits(spec), semantic_payload_bits(spec)
    print(f"{spec.name:10s} raw {raw:>10,d} bits  semantic {sem:>9,d} bits  gain {efficiency_gain(raw, sem):.5f}")

rf = RfParams()
city = cityscapes()
points = {
    "semantic cityscapes": semantic_payload_bits(city),
    "raw cityscapes": raw_payload_bits(city),
    "raw camvid": raw_payload_bits(camvid()),
}
budgets = jcs_sweep(list(points.values()), rf, comm_distance=200.0, target_distance=100.0)
print(f"\ncomm SNR {linear_to_db(budgets[0].comm_snr):.2f} dB, rate {budgets[0].comm_rate / 1e9:.3f} Gbit/s, "
      f"radar SNR {linear_to_db(budgets[0].radar_snr):.2f} dB")
for label, fb in zip(points, budgets):
    print(f"{label:20s} comm {fb.comm_time * 1e3:7.4f} ms  sensing {fb.sensing_time * 1e3:7.4f} ms  "
          f"MI {fb.radar_mi / 1e6:8.4f} Mbit")

# a slower link makes the trade-off visible: quarter-rate coding, 600 m hop
slow = RfParams(rate_efficiency=0.25)
print("\nquarter-rate link at 600 m")
for label, fb in zip(points, jcs_sweep(list(points.values()), slow, 600.0, 100.0)):
    print(f"{label:20s} sensing share {fb.sensing_time / slow.frame_duration:6.1%}  MI {fb.radar_mi / 1e6:8.3f} Mbit")
