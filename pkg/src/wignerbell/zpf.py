"""Zeropoint-field modes, the vacuum sampler and the linear-form algebra.

Every field amplitude in the model is a linear combination of vacuum
amplitudes ``alpha_m`` and their conjugates ``alpha_m*``.  The vacuum Wigner
density is a product of isotropic complex Gaussians with
``E[|alpha|^2] = 1/2``, so second moments of linear forms are available in
closed form and Monte Carlo estimates can be checked against them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

#: Standard deviation of the real and imaginary parts of a vacuum amplitude.
VACUUM_SIGMA = 0.5

_WORDS_PER_BLOCK = 4  # Philox4x64 emits four 64-bit words per counter value


class RegistryError(ValueError):
    """Raised when modes or forms are used with the wrong registry."""


@dataclass(frozen=True, order=True)
class ModeId:
    index: int
    label: str

    def __repr__(self) -> str:
        return f"ModeId({self.index}, {self.label!r})"


class ModeRegistry:
    """Append-only, densely indexed collection of vacuum modes."""

    def __init__(self, labels=()):
        self._modes: list[ModeId] = []
        self._by_label: dict[str, ModeId] = {}
        for label in labels:
            self.register(label)

    def register(self, label: str) -> ModeId:
        if label in self._by_label:
            raise RegistryError(f"mode {label!r} is already registered")
        mode = ModeId(len(self._modes), label)
        self._modes.append(mode)
        self._by_label[label] = mode
        return mode

    def __getitem__(self, label: str) -> ModeId:
        try:
            return self._by_label[label]
        except KeyError:
            raise RegistryError(f"mode {label!r} is not registered") from None

    def __contains__(self, label: object) -> bool:
        return label in self._by_label

    def __len__(self) -> int:
        return len(self._modes)

    def __iter__(self) -> Iterator[ModeId]:
        return iter(tuple(self._modes))

    @property
    def modes(self) -> tuple[ModeId, ...]:
        return tuple(self._modes)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(m.label for m in self._modes)

    def owns(self, mode: ModeId) -> bool:
        return mode.index < len(self._modes) and self._modes[mode.index] == mode

    def __repr__(self) -> str:
        return f"ModeRegistry({list(self.labels)!r})"


def register_mode(registry: ModeRegistry, label: str) -> ModeId:
    return registry.register(label)


def _clean(coeffs: Mapping[ModeId, complex]) -> dict[ModeId, complex]:
    return {m: complex(c) for m, c in sorted(coeffs.items()) if c != 0}


@dataclass(frozen=True, eq=False)
class LinearForm:
    """``sum_m a_m alpha_m + c_m alpha_m* + constant`` over one registry.

    Missing keys mean a zero coefficient; exact zeros are dropped on
    construction so the support of a form is just its keys.
    """

    registry: ModeRegistry
    alpha_coeffs: Mapping[ModeId, complex] = field(default_factory=dict)
    conj_coeffs: Mapping[ModeId, complex] = field(default_factory=dict)
    constant: complex = 0j

    def __post_init__(self):
        for mode in (*self.alpha_coeffs, *self.conj_coeffs):
            if not self.registry.owns(mode):
                raise RegistryError(f"{mode!r} does not belong to {self.registry!r}")
        object.__setattr__(self, "alpha_coeffs", _clean(self.alpha_coeffs))
        object.__setattr__(self, "conj_coeffs", _clean(self.conj_coeffs))
        object.__setattr__(self, "constant", complex(self.constant))

    @classmethod
    def zero(cls, registry: ModeRegistry) -> "LinearForm":
        return cls(registry)

    @classmethod
    def amplitude(cls, registry: ModeRegistry, mode: ModeId | str, coeff: complex = 1.0):
        """The form ``coeff * alpha_mode``."""
        mode = registry[mode] if isinstance(mode, str) else mode
        return cls(registry, {mode: coeff})

    @classmethod
    def conjugate_amplitude(cls, registry: ModeRegistry, mode: ModeId | str, coeff: complex = 1.0):
        """The form ``coeff * alpha_mode*``."""
        mode = registry[mode] if isinstance(mode, str) else mode
        return cls(registry, conj_coeffs={mode: coeff})

    def alpha(self, mode: ModeId) -> complex:
        return self.alpha_coeffs.get(mode, 0j)

    def conj(self, mode: ModeId) -> complex:
        return self.conj_coeffs.get(mode, 0j)

    @property
    def support(self) -> frozenset[ModeId]:
        return frozenset(self.alpha_coeffs) | frozenset(self.conj_coeffs)

    def is_zero(self) -> bool:
        return not self.alpha_coeffs and not self.conj_coeffs and self.constant == 0

    def conjugate(self) -> "LinearForm":
        """Complex conjugate of the field: ``alpha`` and ``alpha*`` trade places."""
        return LinearForm(
            self.registry,
            {m: c.conjugate() for m, c in self.conj_coeffs.items()},
            {m: c.conjugate() for m, c in self.alpha_coeffs.items()},
            self.constant.conjugate(),
        )

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Coefficient vectors of ``alpha`` and ``alpha*`` indexed by mode."""
        a = np.zeros(len(self.registry), dtype=complex)
        c = np.zeros(len(self.registry), dtype=complex)
        for m, v in self.alpha_coeffs.items():
            a[m.index] = v
        for m, v in self.conj_coeffs.items():
            c[m.index] = v
        return a, c

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return lf_combine(1, self, 1, other)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return lf_combine(1, self, -1, other)

    def __mul__(self, c: complex) -> "LinearForm":
        return lf_combine(c, self, 0, LinearForm.zero(self.registry))

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "LinearForm":
        return self * (1 / c)

    def __neg__(self) -> "LinearForm":
        return self * -1

    def same_coefficients(self, other: "LinearForm", atol: float = 0.0) -> bool:
        _check_registry(self, other)
        for mine, theirs in ((self.alpha_coeffs, other.alpha_coeffs), (self.conj_coeffs, other.conj_coeffs)):
            for m in set(mine) | set(theirs):
                if abs(mine.get(m, 0j) - theirs.get(m, 0j)) > atol:
                    return False
        return abs(self.constant - other.constant) <= atol

    def __repr__(self) -> str:
        parts = [f"({c:.6g})*a[{m.label}]" for m, c in self.alpha_coeffs.items()]
        parts += [f"({c:.6g})*a*[{m.label}]" for m, c in self.conj_coeffs.items()]
        if self.constant:
            parts.append(f"({self.constant:.6g})")
        return "LinearForm(" + (" + ".join(parts) or "0") + ")"


def _check_registry(a: LinearForm, b: LinearForm) -> None:
    if a.registry is not b.registry:
        raise RegistryError("linear forms belong to different mode registries")


def lf_combine(c1: complex, a: LinearForm, c2: complex, b: LinearForm) -> LinearForm:
    """Coefficient-wise ``c1*a + c2*b``."""
    _check_registry(a, b)

    def mix(x: Mapping[ModeId, complex], y: Mapping[ModeId, complex]) -> dict[ModeId, complex]:
        return {m: c1 * x.get(m, 0j) + c2 * y.get(m, 0j) for m in set(x) | set(y)}

    return LinearForm(
        a.registry,
        mix(a.alpha_coeffs, b.alpha_coeffs),
        mix(a.conj_coeffs, b.conj_coeffs),
        c1 * a.constant + c2 * b.constant,
    )


def exact_correlation(a: LinearForm, b: LinearForm) -> complex:
    """Vacuum average ``<a b>`` evaluated from the Gaussian moments.

    With ``E[alpha_m alpha_n*] = delta_mn / 2`` and vanishing
    ``E[alpha alpha]``, only alpha/conjugate pairings on a shared mode
    contribute.  No sampling is involved.
    """
    _check_registry(a, b)
    total = 0j
    for m, ca in a.alpha_coeffs.items():
        cb = b.conj_coeffs.get(m)
        if cb is not None:
            total += ca * cb / 2
    for m, ca in a.conj_coeffs.items():
        cb = b.alpha_coeffs.get(m)
        if cb is not None:
            total += ca * cb / 2
    if a.constant and b.constant:
        total += a.constant * b.constant
    return total


@dataclass(frozen=True)
class VacuumSample:
    """One draw of every registered vacuum amplitude."""

    registry: ModeRegistry
    values: np.ndarray  # complex, indexed by ModeId.index

    def __getitem__(self, mode: ModeId | str) -> complex:
        mode = self.registry[mode] if isinstance(mode, str) else mode
        return complex(self.values[mode.index])

    @classmethod
    def from_mapping(cls, registry: ModeRegistry, values: Mapping[ModeId | str, complex]):
        arr = np.zeros(len(registry), dtype=complex)
        for mode, v in values.items():
            mode = registry[mode] if isinstance(mode, str) else mode
            arr[mode.index] = v
        return cls(registry, arr)


def evaluate(a: LinearForm, s: VacuumSample) -> complex:
    if a.registry is not s.registry:
        raise RegistryError("sample and form belong to different mode registries")
    total = a.constant
    for m, c in a.alpha_coeffs.items():
        total += c * s.values[m.index]
    for m, c in a.conj_coeffs.items():
        total += c * np.conj(s.values[m.index])
    return complex(total)


def evaluate_many(a: LinearForm, samples: np.ndarray) -> np.ndarray:
    """Evaluate ``a`` on every row of an ``(n, n_modes)`` sample matrix.

    Accumulates mode by mode with elementwise operations so each row's value
    does not depend on how many rows are evaluated together.
    """
    out = np.full(samples.shape[0], a.constant, dtype=complex)
    for m, c in a.alpha_coeffs.items():
        out += c * samples[:, m.index]
    for m, c in a.conj_coeffs.items():
        out += c * np.conj(samples[:, m.index])
    return out


def vacuum_block(n_modes: int, seed: int, start: int, stop: int) -> np.ndarray:
    """Vacuum amplitudes for sample indices ``start <= i < stop``.

    Mode ``m`` of sample ``i`` is read from the Philox block with key
    ``(seed, m)`` and counter ``i``; two of its words feed a Box-Muller
    transform.  Any sub-range of the stream is therefore reproduced exactly.
    """
    if not 0 <= start <= stop:
        raise ValueError(f"invalid sample range [{start}, {stop})")
    n = stop - start
    out = np.empty((n, n_modes), dtype=complex)
    if n == 0:
        return out
    for m in range(n_modes):
        bitgen = np.random.Philox(key=[seed, m], counter=[start, 0, 0, 0])
        words = bitgen.random_raw(_WORDS_PER_BLOCK * n).reshape(n, _WORDS_PER_BLOCK)
        # 53-bit uniforms; u1 lies in (0, 1] so the log is finite
        u1 = ((words[:, 0] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
        u2 = (words[:, 1] >> np.uint64(11)).astype(np.float64) * 2.0**-53
        radius = VACUUM_SIGMA * np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out[:, m] = radius * np.cos(angle) + 1j * radius * np.sin(angle)
    return out


def sample_vacuum(
    registry: ModeRegistry, seed: int, count: int, start: int = 0, block_size: int = 4096
) -> Iterator[VacuumSample]:
    """Stream ``count`` vacuum samples beginning at sample index ``start``."""
    if count < 0:
        raise ValueError("count must be non-negative")
    stop = start + count
    for lo in range(start, stop, block_size):
        block = vacuum_block(len(registry), seed, lo, min(lo + block_size, stop))
        for row in block:
            yield VacuumSample(registry, row)
