"""What the balanced beam splitter does to the correlations."""

from wignerbell import BellState, analyze, encode_settings, exact_correlation, prepare

for state in BellState:
    reg, b1, b2 = prepare(encode_settings(state))
    f = analyze(b1, b2, reg)
    o1, o2 = f.out1, f.out2
    print(state.value)
    print("  <1H 2H> =", exact_correlation(o1.h, o2.h))
    print("  <1H 2V> =", exact_correlation(o1.h, o2.v), "  <1V 2H> =", exact_correlation(o1.v, o2.h))
    print("  <1H 1V> =", exact_correlation(o1.h, o1.v), "  <2H 2V> =", exact_correlation(o2.h, o2.v))

# For psi- the cross-port correlation keeps its source magnitude g: the singlet
# leaves the splitter with one beam in each output. psi+ instead correlates the
# two polarizations of the same output beam, with value i*g.
