"""Bob's rotator and retarder turn the psi+ beams into any Bell state."""

import math

from wignerbell import (
    BellState,
    EncoderSettings,
    SourceConfig,
    bob_encode,
    crystal_output,
    encode_settings,
    exact_correlation,
    exact_table,
)
from wignerbell.source import standard_registry

cfg = SourceConfig(g=0.1)
reg = standard_registry()
beam1, beam2 = crystal_output(cfg, reg)

print("state       beta     kappa   <h1 h2>  <h1 v2>  <v1 h2>  <v1 v2>   (units of g)")
for state in BellState:
    s = encode_settings(state)
    b1 = bob_encode(beam1, s)
    row = [exact_correlation(x, y) / cfg.g for x in (b1.h, b1.v) for y in (beam2.h, beam2.v)]
    cells = " ".join(f"{z.real:+7.3f}" for z in row)
    print(f"{state.value:10s} {s.beta:+7.4f} {s.kappa:+7.4f}  {cells}")

# psi states correlate H with V; phi states correlate like polarizations.
# Only psi- changes sign when the beam labels are swapped.

# The phi settings are often quoted with beta = +pi/2 instead of -pi/2.
# Only the sign of the correlations differs; the analyzer cannot tell.
for kappa in (0.0, math.pi):
    minus = exact_table(EncoderSettings(-math.pi / 2, kappa), cfg).relative()
    plus = exact_table(EncoderSettings(math.pi / 2, kappa), cfg).relative()
    print(f"kappa={kappa:.3f}: largest table difference {max(abs(minus[p] - plus[p]) for p in minus):.1e}")
