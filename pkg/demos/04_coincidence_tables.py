"""Coincidence tables at Alice's analyzer and the resulting classification."""

import math

from wignerbell import PAIRS, EncoderSettings, classify, exact_table

print(f"{'beta':>7} {'kappa':>7} " + " ".join(f"{p:>8}" for p in PAIRS) + "  class")
for beta in (0.0, -math.pi / 4, -math.pi / 2):
    for kappa in (0.0, math.pi / 2, math.pi):
        t = exact_table(EncoderSettings(beta, kappa))
        rel = t.relative()
        cells = " ".join(f"{rel[p]:8.4f}" for p in PAIRS)
        print(f"{beta:7.3f} {kappa:7.3f} {cells}  {classify(t).value}")

# Entries are in units of g^2. HH and VV coincidences never occur; the cross
# and same-channel pairs follow cos^2(beta)/2 * (1 -/+ cos(kappa)).
