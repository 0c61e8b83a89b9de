import math

import numpy as np
import pytest

from wignerbell.optics import (
    DetectorField,
    PolarizedBeam,
    apply_beamsplitter,
    apply_pbs,
    apply_retarder,
    apply_rotator,
    beam_moment,
)
from wignerbell.source import SourceConfig, crystal_output, standard_registry
from wignerbell.zpf import LinearForm, ModeRegistry, exact_correlation, lf_combine


@pytest.fixture
def source():
    reg = standard_registry()
    b1, b2 = crystal_output(SourceConfig(0.1), reg)
    return reg, b1, b2


def random_beam(reg, rng, channel, labels=None):
    modes = [reg[x] for x in labels] if labels else reg.modes

    def form():
        return LinearForm(
            reg,
            {m: complex(*rng.normal(size=2)) for m in modes},
            {m: complex(*rng.normal(size=2)) for m in modes},
        )

    return PolarizedBeam(form(), form(), channel)


def test_rotator_zero_is_identity(source):
    _, b1, _ = source
    assert apply_rotator(b1, 0.0).same_coefficients(b1)


def test_rotator_quarter_turn(source):
    _, b1, _ = source
    out = apply_rotator(b1, math.pi / 2)
    assert out.h.same_coefficients(-b1.v, atol=1e-16)
    assert out.v.same_coefficients(b1.h, atol=1e-16)


def test_rotator_inverse(source):
    _, b1, _ = source
    back = apply_rotator(apply_rotator(b1, 0.83), -0.83)
    assert back.same_coefficients(b1, atol=1e-15)


def test_retarder_zero_and_pi(source):
    _, b1, b2 = source
    assert apply_retarder(b1, 0.0).same_coefficients(b1)
    flipped = apply_retarder(b1, math.pi)
    assert flipped.h.same_coefficients(b1.h)
    assert flipped.v.same_coefficients(-b1.v, atol=1e-15)


def test_retarder_keeps_correlation_magnitude(source):
    _, b1, b2 = source
    for kappa in (0.3, 1.2, math.pi, 4.0):
        out = apply_retarder(b1, kappa)
        for other in (b2.h, b2.v, b1.h):
            assert abs(exact_correlation(out.v, other)) == pytest.approx(abs(exact_correlation(b1.v, other)), abs=1e-15)


def test_beamsplitter_single_input(source):
    reg, b1, _ = source
    out1, out2 = apply_beamsplitter(b1, PolarizedBeam.dark(reg, "2"))
    assert out1.h.same_coefficients(b1.h / math.sqrt(2), atol=1e-16)
    assert out2.v.same_coefficients(1j * b1.v / math.sqrt(2), atol=1e-16)


def test_beamsplitter_same_channel_rejected(source):
    _, b1, _ = source
    with pytest.raises(ValueError):
        apply_beamsplitter(b1, b1)


def test_beamsplitter_psi_plus_like_polarization_uncorrelated(source):
    _, b1, b2 = source
    out1, out2 = apply_beamsplitter(b1, b2)
    assert exact_correlation(out1.h, out2.h) == 0
    assert abs(exact_correlation(out1.v, out2.v)) < 1e-15


@pytest.mark.parametrize("seed", range(5))
def test_beamsplitter_unitarity(seed):
    reg = ModeRegistry([f"m{k}" for k in range(6)])
    rng = np.random.default_rng(seed)
    b1, b2 = random_beam(reg, rng, "1"), random_beam(reg, rng, "2")
    o1, o2 = apply_beamsplitter(b1, b2)
    before = beam_moment(b1, b1) + beam_moment(b2, b2)
    after = beam_moment(o1, o1) + beam_moment(o2, o2)
    assert abs(after - before) <= 1e-12 * max(1.0, abs(before))


@pytest.mark.parametrize("seed", range(3))
def test_beamsplitter_preserves_polarization_support(seed):
    reg = ModeRegistry([f"m{k}" for k in range(8)])
    rng = np.random.default_rng(seed)
    b1 = random_beam(reg, rng, "1", ["m0", "m1"])
    b1 = PolarizedBeam(b1.h, random_beam(reg, rng, "x", ["m2", "m3"]).v, "1")
    b2 = random_beam(reg, rng, "2", ["m4", "m5"])
    b2 = PolarizedBeam(b2.h, random_beam(reg, rng, "x", ["m6", "m7"]).v, "2")
    o1, o2 = apply_beamsplitter(b1, b2)
    h_in = b1.h.support | b2.h.support
    v_in = b1.v.support | b2.v.support
    for o in (o1, o2):
        assert o.h.support <= h_in
        assert o.v.support <= v_in


@pytest.mark.parametrize("seed", range(3))
def test_rotator_and_retarder_are_linear(seed):
    reg = ModeRegistry([f"m{k}" for k in range(4)])
    rng = np.random.default_rng(seed)
    x, y = random_beam(reg, rng, "1"), random_beam(reg, rng, "1")
    c1, c2 = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    mixed = PolarizedBeam(lf_combine(c1, x.h, c2, y.h), lf_combine(c1, x.v, c2, y.v), "1")
    for op in (lambda b: apply_rotator(b, 0.7), lambda b: apply_retarder(b, 2.1)):
        ox, oy, om = op(x), op(y), op(mixed)
        assert om.h.same_coefficients(lf_combine(c1, ox.h, c2, oy.h), atol=1e-12)
        assert om.v.same_coefficients(lf_combine(c1, ox.v, c2, oy.v), atol=1e-12)


def _idle(reg, station):
    return LinearForm.amplitude(reg, f"alice{station}H"), LinearForm.amplitude(reg, f"alice{station}V")


def test_pbs_routing_and_phases(source):
    reg, b1, _ = source
    dh, dv = apply_pbs(b1, *_idle(reg, 1))
    assert dh.signal.same_coefficients(1j * b1.h)
    assert dv.signal.same_coefficients(b1.v)
    assert dh.idle.same_coefficients(LinearForm.amplitude(reg, "alice1V"))
    assert dv.idle.same_coefficients(LinearForm.amplitude(reg, "alice1H", 1j))


def test_pbs_pure_horizontal_beam(source):
    reg, b1, _ = source
    pure_h = PolarizedBeam(b1.h, LinearForm.zero(reg), "1")
    _, dv = apply_pbs(pure_h, *_idle(reg, 1))
    assert dv.signal.is_zero()
    assert not dv.idle.is_zero()


def test_pbs_idle_uncorrelated(source):
    reg, b1, b2 = source
    dh1, dv1 = apply_pbs(b1, *_idle(reg, 1), ("DH1", "DV1"))
    dh2, dv2 = apply_pbs(b2, *_idle(reg, 2), ("DH2", "DV2"))
    assert exact_correlation(dh1.signal, dh1.idle) == 0
    assert exact_correlation(dh1.signal, dh1.idle.conjugate()) == 0
    idles = [f.idle for f in (dh1, dv1, dh2, dv2)]
    for i, x in enumerate(idles):
        for y in idles[i + 1:]:
            assert exact_correlation(x, y) == 0
            assert exact_correlation(x, y.conjugate()) == 0


def test_pbs_idle_carries_only_injected_modes(source):
    reg, b1, _ = source
    dh, dv = apply_pbs(b1, *_idle(reg, 1))
    assert dh.idle.support == {reg["alice1V"]}
    assert dv.idle.support == {reg["alice1H"]}


def test_pbs_overlapping_idle_rejected(source):
    reg, b1, _ = source
    with pytest.raises(ValueError):
        apply_pbs(b1, LinearForm.amplitude(reg, "k1H"), LinearForm.amplitude(reg, "alice1V"))


def test_detector_field_rejects_shared_modes():
    reg = ModeRegistry(["m0"])
    with pytest.raises(ValueError):
        DetectorField(LinearForm.amplitude(reg, "m0"), LinearForm.amplitude(reg, "m0"), "DH1")
