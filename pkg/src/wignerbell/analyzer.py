"""Alice's partial Bell-state analyzer.

The two beams meet on a balanced beam splitter; each output is split by a
polarizing beam splitter whose unused port admits fresh vacuum.  Joint
detection probabilities are sums of squared moduli of the vacuum
correlations between the field components reaching two detectors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .optics import DetectorField, PolarizedBeam, apply_beamsplitter, apply_pbs
from .source import IDLE_MODES, EncoderSettings, SourceConfig, prepare
from .zpf import LinearForm, ModeRegistry, RegistryError, exact_correlation

#: Detector pairs in reporting order.
PAIRS = ("DH1_DH2", "DV1_DV2", "DH1_DV2", "DV1_DH2", "DH1_DV1", "DH2_DV2")
LIKE_PAIRS = ("DH1_DH2", "DV1_DV2")
CROSS_PAIRS = ("DH1_DV2", "DV1_DH2")
SAME_CHANNEL_PAIRS = ("DH1_DV1", "DH2_DV2")

#: Relative size below which a whole table is treated as identically zero.
ZERO_TABLE_RTOL = 1e-20

EXACT_EPSILON = 1e-9
MC_EPSILON = 0.05


class Classification(enum.Enum):
    PSI_MINUS = "psi_minus"
    PSI_PLUS = "psi_plus"
    PHI_CLASS = "phi_class"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class AnalyzerFields:
    dh1: DetectorField
    dv1: DetectorField
    dh2: DetectorField
    dv2: DetectorField
    out1: PolarizedBeam
    out2: PolarizedBeam

    def __getitem__(self, detector: str) -> DetectorField:
        return getattr(self, detector.lower())

    def detectors(self) -> tuple[DetectorField, ...]:
        return self.dh1, self.dv1, self.dh2, self.dv2


@dataclass(frozen=True)
class CoincidenceTable:
    """Six pairwise joint detection probabilities (efficiency constants = 1)."""

    p: Mapping[str, float]
    scale: float = 1.0
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.p) != set(PAIRS):
            raise ValueError(f"table must have exactly the pairs {PAIRS}")
        for pair, value in self.p.items():
            if value < 0:
                raise ValueError(f"negative probability for {pair}: {value}")
        object.__setattr__(self, "p", {pair: float(self.p[pair]) for pair in PAIRS})

    def __getitem__(self, pair: str) -> float:
        return self.p[pair]

    def total(self) -> float:
        return sum(self.p.values())

    def normalized(self) -> dict[str, float]:
        """Entries divided by their sum; all zeros for a vanishing table.

        Totals below ``ZERO_TABLE_RTOL * scale`` are rounding residue of
        exactly cancelling amplitudes and are reported as zero.
        """
        total = self.total()
        if total <= ZERO_TABLE_RTOL * self.scale:
            return {pair: 0.0 for pair in PAIRS}
        return {pair: v / total for pair, v in self.p.items()}

    def relative(self) -> dict[str, float]:
        """Entries in units of ``scale``."""
        return {pair: v / self.scale for pair, v in self.p.items()}

    def as_dict(self) -> dict[str, float]:
        return dict(self.p)


def _idle_forms(registry: ModeRegistry) -> dict[str, LinearForm]:
    missing = [label for label in IDLE_MODES if label not in registry]
    if missing:
        raise RegistryError(f"registry lacks idle-port modes {missing}")
    return {label: LinearForm.amplitude(registry, label) for label in IDLE_MODES}


def analyze(beam1: PolarizedBeam, beam2: PolarizedBeam, registry: ModeRegistry) -> AnalyzerFields:
    if beam1.registry is not registry or beam2.registry is not registry:
        raise RegistryError("beams do not belong to the given registry")
    idle = _idle_forms(registry)
    out1, out2 = apply_beamsplitter(beam1, beam2)
    dh1, dv1 = apply_pbs(out1, idle["alice1H"], idle["alice1V"], ("DH1", "DV1"))
    dh2, dv2 = apply_pbs(out2, idle["alice2H"], idle["alice2V"], ("DH2", "DV2"))
    return AnalyzerFields(dh1, dv1, dh2, dv2, out1, out2)


def joint_probability(a: DetectorField, b: DetectorField, include_idle: bool = True) -> float:
    """Coincidence probability of two detectors.

    Sums ``|<x y>|^2`` over the signal and idle components of both fields.
    The idle terms vanish because the idle vacuum shares no modes with
    anything else; ``include_idle=False`` keeps only the signal term.
    """
    if a.detector == b.detector:
        raise ValueError(f"joint probability needs two distinct detectors, got {a.detector} twice")
    xs = a.components() if include_idle else (a.signal,)
    ys = b.components() if include_idle else (b.signal,)
    total = 0.0
    for x in xs:
        for y in ys:
            total += abs(exact_correlation(x, y)) ** 2
    return total


def coincidence_table(f: AnalyzerFields, scale: float = 1.0, include_idle: bool = True) -> CoincidenceTable:
    p = {}
    for pair in PAIRS:
        first, second = pair.split("_")
        p[pair] = joint_probability(f[first], f[second], include_idle)
    return CoincidenceTable(p, scale)


def exact_table(settings: EncoderSettings, cfg: SourceConfig | None = None) -> CoincidenceTable:
    """Closed-form coincidence table for Bob's ``settings``; scale is ``g**2``."""
    cfg = cfg or SourceConfig()
    registry, beam1, beam2 = prepare(settings, cfg)
    return coincidence_table(analyze(beam1, beam2, registry), scale=cfg.g**2)


def classify(t: CoincidenceTable, epsilon: float = EXACT_EPSILON) -> Classification:
    """Decide which Bell state (or class) a table points to.

    Entries are compared with ``epsilon`` after dividing by the larger of
    the table scale and its largest entry.
    """
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    norm = max(t.scale, max(t.p.values()))
    rel = {pair: (v / norm if norm > 0 else 0.0) for pair, v in t.p.items()}

    def above(pairs):
        return all(rel[p] > epsilon for p in pairs)

    def below(pairs):
        return all(rel[p] < epsilon for p in pairs)

    if below(PAIRS):
        return Classification.PHI_CLASS
    if below(LIKE_PAIRS):
        if above(CROSS_PAIRS) and below(SAME_CHANNEL_PAIRS):
            return Classification.PSI_MINUS
        if above(SAME_CHANNEL_PAIRS) and below(CROSS_PAIRS):
            return Classification.PSI_PLUS
    return Classification.AMBIGUOUS
