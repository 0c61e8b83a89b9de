"""Lossless linear optics acting on polarized field amplitudes.

Conventions: a balanced beam splitter transmits with ``1/sqrt(2)`` and
reflects with ``i/sqrt(2)``; a polarizing beam splitter reflects the
horizontal component (factor ``i``) and transmits the vertical one.  All
path lengths are equal, so no propagation phases appear.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .zpf import LinearForm, RegistryError, exact_correlation, lf_combine

_SQRT_HALF = 1 / math.sqrt(2)

DETECTORS = ("DH1", "DV1", "DH2", "DV2")


@dataclass(frozen=True)
class PolarizedBeam:
    h: LinearForm
    v: LinearForm
    channel: str

    def __post_init__(self):
        if self.h.registry is not self.v.registry:
            raise RegistryError("polarization components use different registries")

    @property
    def registry(self):
        return self.h.registry

    @property
    def support(self):
        return self.h.support | self.v.support

    @classmethod
    def dark(cls, registry, channel: str) -> "PolarizedBeam":
        """A beam with no field at all (both components zero)."""
        zero = LinearForm.zero(registry)
        return cls(zero, zero, channel)

    def components(self) -> tuple[LinearForm, LinearForm]:
        return self.h, self.v

    def same_coefficients(self, other: "PolarizedBeam", atol: float = 0.0) -> bool:
        return self.h.same_coefficients(other.h, atol) and self.v.same_coefficients(other.v, atol)


@dataclass(frozen=True)
class DetectorField:
    """Field at one detector: routed signal plus the vacuum from the idle port."""

    signal: LinearForm
    idle: LinearForm
    detector: str

    def __post_init__(self):
        if self.detector not in DETECTORS:
            raise ValueError(f"unknown detector {self.detector!r}")
        if self.signal.support & self.idle.support:
            raise ValueError(f"{self.detector}: signal and idle share vacuum modes")

    def components(self) -> tuple[LinearForm, LinearForm]:
        return self.signal, self.idle


def apply_rotator(b: PolarizedBeam, beta: float) -> PolarizedBeam:
    """Rotate the plane of polarization by ``beta`` radians."""
    c, s = math.cos(beta), math.sin(beta)
    return PolarizedBeam(
        lf_combine(c, b.h, -s, b.v),
        lf_combine(s, b.h, c, b.v),
        b.channel,
    )


def apply_retarder(b: PolarizedBeam, kappa: float) -> PolarizedBeam:
    """Delay the vertical component by the phase ``kappa``."""
    return PolarizedBeam(b.h, b.v * cmath.exp(1j * kappa), b.channel)


def apply_beamsplitter(
    b1: PolarizedBeam, b2: PolarizedBeam, channels: tuple[str, str] = ("out1", "out2")
) -> tuple[PolarizedBeam, PolarizedBeam]:
    """Recombine two beams on a 50/50 splitter.

    Both input ports are occupied, so no extra vacuum enters here.
    Polarization is untouched: each output component mixes only the
    matching input components.
    """
    if b1.channel == b2.channel:
        raise ValueError(f"both inputs arrive on channel {b1.channel!r}")
    if b1.registry is not b2.registry:
        raise RegistryError("beams belong to different mode registries")
    t, r = _SQRT_HALF, 1j * _SQRT_HALF
    out1 = PolarizedBeam(lf_combine(t, b1.h, r, b2.h), lf_combine(t, b1.v, r, b2.v), channels[0])
    out2 = PolarizedBeam(lf_combine(t, b2.h, r, b1.h), lf_combine(t, b2.v, r, b1.v), channels[1])
    return out1, out2


def apply_pbs(
    b: PolarizedBeam,
    idle_h: LinearForm,
    idle_v: LinearForm,
    detectors: tuple[str, str] = ("DH1", "DV1"),
) -> tuple[DetectorField, DetectorField]:
    """Split ``b`` by polarization, mixing in vacuum from the unused port.

    The H detector sees ``i*b.h`` plus the transmitted vertical idle
    amplitude; the V detector sees ``b.v`` plus the reflected horizontal
    idle amplitude ``i*idle_h``.

    Returns:
        ``(h_detector_field, v_detector_field)``.
    """
    if (idle_h.support | idle_v.support) & b.support:
        raise ValueError("idle-port vacuum overlaps modes carried by the signal beam")
    h_field = DetectorField(1j * b.h, idle_v, detectors[0])
    v_field = DetectorField(b.v, 1j * idle_h, detectors[1])
    return h_field, v_field


def beam_moment(x: PolarizedBeam, y: PolarizedBeam) -> complex:
    """``sum_c <x_c y_c*>`` over both polarization components.

    ``beam_moment(b, b)`` is the mean vacuum intensity carried by ``b``.
    """
    return sum(
        (exact_correlation(xc, yc.conjugate()) for xc, yc in zip(x.components(), y.components())),
        0j,
    )
