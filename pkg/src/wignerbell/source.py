"""Down-conversion source and Bob's dense-coding encoder.

The crystal is modeled to first order in the coupling: each outgoing
component is its own vacuum amplitude plus ``g`` times the conjugate of
its partner, with partners ``s <-> r`` and ``p <-> q``.  Bob then acts on
beam 1 only, with a polarization rotator followed by a wave retarder.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .optics import PolarizedBeam, apply_retarder, apply_rotator
from .zpf import LinearForm, ModeRegistry, RegistryError

CRYSTAL_MODES = ("k1H", "k1V", "k2H", "k2V")
IDLE_MODES = ("alice1H", "alice1V", "alice2H", "alice2V")


class BellState(enum.Enum):
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"

    @classmethod
    def parse(cls, text: str) -> "BellState":
        """Accept ``psi-``, ``psi-minus``, ``psi_minus``, ``PsiMinus`` and the like."""
        key = text.strip().lower().replace("_", "").replace("-minus", "-").replace("-plus", "+")
        key = key.replace("minus", "-").replace("plus", "+")
        aliases = {"psi+": cls.PSI_PLUS, "psi-": cls.PSI_MINUS, "phi+": cls.PHI_PLUS, "phi-": cls.PHI_MINUS}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown Bell state {text!r}") from None


@dataclass(frozen=True)
class SourceConfig:
    g: float = 0.1

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")


@dataclass(frozen=True)
class EncoderSettings:
    beta: float
    kappa: float


_BELL_SETTINGS = {
    BellState.PSI_PLUS: EncoderSettings(0.0, 0.0),
    BellState.PSI_MINUS: EncoderSettings(0.0, math.pi),
    BellState.PHI_PLUS: EncoderSettings(-math.pi / 2, math.pi),
    BellState.PHI_MINUS: EncoderSettings(-math.pi / 2, 0.0),
}


def encode_settings(state: BellState) -> EncoderSettings:
    """Rotator angle and retarder phase that prepare ``state`` from psi+."""
    return _BELL_SETTINGS[state]


def standard_registry() -> ModeRegistry:
    """Registry holding the four crystal modes followed by the four idle modes."""
    return ModeRegistry(CRYSTAL_MODES + IDLE_MODES)


def crystal_output(cfg: SourceConfig, registry: ModeRegistry) -> tuple[PolarizedBeam, PolarizedBeam]:
    """The two correlated beams leaving the crystal (psi+ baseline).

    Returns:
        ``(beam1, beam2)`` with ``beam1 = (F_s, F_p)`` and ``beam2 = (F_q, F_r)``.
    """
    missing = [label for label in CRYSTAL_MODES if label not in registry]
    if missing:
        raise RegistryError(f"registry lacks crystal modes {missing}")

    def amplified(signal: str, partner: str) -> LinearForm:
        return LinearForm(registry, {registry[signal]: 1.0}, {registry[partner]: cfg.g})

    f_s = amplified("k1H", "k2V")
    f_p = amplified("k1V", "k2H")
    f_q = amplified("k2H", "k1V")
    f_r = amplified("k2V", "k1H")
    return PolarizedBeam(f_s, f_p, "1"), PolarizedBeam(f_q, f_r, "2")


def bob_encode(beam1: PolarizedBeam, s: EncoderSettings) -> PolarizedBeam:
    return apply_retarder(apply_rotator(beam1, s.beta), s.kappa)


def prepare(
    settings: EncoderSettings, cfg: SourceConfig | None = None, registry: ModeRegistry | None = None
) -> tuple[ModeRegistry, PolarizedBeam, PolarizedBeam]:
    """Registry plus the two beams as they leave Bob's station."""
    cfg = cfg or SourceConfig()
    registry = registry if registry is not None else standard_registry()
    beam1, beam2 = crystal_output(cfg, registry)
    return registry, bob_encode(beam1, settings), beam2
