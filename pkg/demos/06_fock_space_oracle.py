"""The same experiment with two photons in Fock space."""

from wignerbell import BellState, EncoderSettings, bell_polynomial, bs_transform, coincidence_pattern, encode_settings, exact_table
from wignerbell.hilbert import normalized_pattern, oracle_pattern

for state in BellState:
    after = bs_transform(bell_polynomial(state))
    # squared coefficients; a doubly occupied mode carries an extra factor 2 in the norm
    print(state.value, "->", {" ".join(m): round(abs(c) ** 2, 3) for m, c in after.terms.items()})
    pattern = normalized_pattern(coincidence_pattern(after))
    wigner = exact_table(encode_settings(state)).normalized()
    agree = all(abs(pattern[p] - wigner[p]) < 1e-12 for p in pattern)
    print("   coincidences agree with the vacuum-field model:", agree)

# Off the Bell-state grid both pictures still agree.
s = EncoderSettings(0.4, 2.0)
print(normalized_pattern(oracle_pattern(s)))
print(exact_table(s).normalized())
