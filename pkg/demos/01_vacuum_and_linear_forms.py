"""Vacuum amplitudes and the linear forms built from them."""

import numpy as np

from wignerbell import LinearForm, ModeRegistry, exact_correlation, sample_vacuum
from wignerbell.zpf import evaluate_many, vacuum_block

# Two vacuum modes. Each amplitude is a complex Gaussian with <|alpha|^2> = 1/2.
reg = ModeRegistry(["m0", "m1"])
draws = vacuum_block(len(reg), seed=1, start=0, stop=200_000)
print("mean |alpha|^2 per mode:", np.mean(np.abs(draws) ** 2, axis=0))

# The stream is a pure function of (seed, sample index, mode): any window reproduces it.
window = vacuum_block(len(reg), seed=1, start=1000, stop=1003)
print("window matches full stream:", np.array_equal(window, draws[1000:1003]))
first = next(sample_vacuum(reg, seed=1, count=1))
print("sample 0, mode m0:", first["m0"])

# A field amplitude is a linear form in alpha and alpha*.
g = 0.1
a = LinearForm(reg, {reg["m0"]: 1.0}, {reg["m1"]: g})  # alpha_0 + g alpha_1*
b = LinearForm(reg, {reg["m1"]: 1.0}, {reg["m0"]: g})  # alpha_1 + g alpha_0*
print("<a b> exact:", exact_correlation(a, b))
print("<a a> exact:", exact_correlation(a, a))

# Same number from samples.
prod = evaluate_many(a, draws) * evaluate_many(b, draws)
print("<a b> sampled:", prod.mean(), "+/-", np.sqrt(prod.real.var() + prod.imag.var()) / np.sqrt(len(prod)))
