"""Two-photon Fock-space cross-check.

States are polynomials in the creation operators ``aH, aV`` (beam 1) and
``bH, bV`` (beam 2) acting on the vacuum.  The beam splitter substitutes
``a -> (a + i b)/sqrt(2)``, ``b -> (b + i a)/sqrt(2)`` polarization by
polarization, the same convention the field-amplitude model uses, so the
resulting coincidence patterns can be compared with its tables.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping

from .analyzer import PAIRS
from .source import BellState, EncoderSettings

MODES = ("aH", "aV", "bH", "bV")
DETECTOR_OF = {"aH": "DH1", "aV": "DV1", "bH": "DH2", "bV": "DV2"}

PRUNE_ATOL = 1e-13
NORM_ATOL = 1e-9

Monomial = tuple[str, ...]

_PAIR_LOOKUP = {frozenset(p.split("_")): p for p in PAIRS}


def _monomial(*modes: str) -> Monomial:
    for m in modes:
        if m not in MODES:
            raise ValueError(f"unknown mode {m!r}")
    return tuple(sorted(modes, key=MODES.index))


@dataclass(frozen=True)
class OperatorPolynomial:
    """Complex-weighted monomials in creation operators; tiny terms are pruned."""

    terms: Mapping[Monomial, complex]

    def __post_init__(self):
        merged: dict[Monomial, complex] = defaultdict(complex)
        for mono, c in self.terms.items():
            merged[_monomial(*mono)] += c
        clean = {m: complex(c) for m, c in sorted(merged.items()) if abs(c) > PRUNE_ATOL}
        object.__setattr__(self, "terms", clean)

    def __mul__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        out: dict[Monomial, complex] = defaultdict(complex)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[_monomial(*m1, *m2)] += c1 * c2
        return OperatorPolynomial(out)

    def __add__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        out: dict[Monomial, complex] = defaultdict(complex, self.terms)
        for m, c in other.terms.items():
            out[m] += c
        return OperatorPolynomial(out)

    def scaled(self, c: complex) -> "OperatorPolynomial":
        return OperatorPolynomial({m: c * v for m, v in self.terms.items()})

    def norm(self) -> float:
        """Squared state norm; a monomial with occupations ``n_k`` weighs ``prod n_k!``."""
        total = 0.0
        for mono, c in self.terms.items():
            weight = math.prod(math.factorial(k) for k in Counter(mono).values())
            total += abs(c) ** 2 * weight
        return total

    def degree(self) -> set[int]:
        return {len(m) for m in self.terms}

    def substitute(self, rule: Mapping[str, "OperatorPolynomial"]) -> "OperatorPolynomial":
        """Replace every creation operator by a polynomial and expand."""
        out = OperatorPolynomial({})
        for mono, c in self.terms.items():
            term = OperatorPolynomial({(): c})
            for mode in mono:
                term = term * rule.get(mode, _op(mode))
            out = out + term
        return out

    def equals_up_to_phase(self, other: "OperatorPolynomial", atol: float = 1e-12) -> bool:
        if set(self.terms) != set(other.terms):
            return False
        if not self.terms:
            return True
        ref = next(iter(self.terms))
        phase = other.terms[ref] / self.terms[ref]
        if abs(abs(phase) - 1) > atol:
            return False
        return all(abs(other.terms[m] - phase * c) <= atol for m, c in self.terms.items())


def _op(mode: str, c: complex = 1.0) -> OperatorPolynomial:
    return OperatorPolynomial({(mode,): c})


def _lin(**coeffs: complex) -> OperatorPolynomial:
    return OperatorPolynomial({(m,): c for m, c in coeffs.items()})


_R2 = 1 / math.sqrt(2)


def bell_polynomial(state: BellState) -> OperatorPolynomial:
    sign = -1.0 if state in (BellState.PSI_MINUS, BellState.PHI_MINUS) else 1.0
    if state in (BellState.PSI_PLUS, BellState.PSI_MINUS):
        terms = {("aH", "bV"): _R2, ("aV", "bH"): sign * _R2}
    else:
        terms = {("aH", "bH"): _R2, ("aV", "bV"): sign * _R2}
    return OperatorPolynomial(terms)


def antisymmetric_polynomial(pol1: str = "H", pol2: str = "V") -> OperatorPolynomial:
    """Photon with polarization ``pol1`` in beam 1 and ``pol2`` in beam 2, antisymmetrized in space."""
    first = OperatorPolynomial({(f"a{pol1}", f"b{pol2}"): _R2})
    second = OperatorPolynomial({(f"b{pol1}", f"a{pol2}"): -_R2})
    # equal polarizations cancel: no such bosonic state
    return first + second


def encode_polynomial(settings: EncoderSettings) -> OperatorPolynomial:
    """Bob's rotator and retarder applied to photon 1 of the psi+ state.

    Reproduces :func:`bell_polynomial` at the four Bell-state settings and
    gives the corresponding superposition elsewhere.
    """
    c, s = math.cos(settings.beta), math.sin(settings.beta)
    phase = cmath.exp(1j * settings.kappa)
    rule = {
        "aH": _lin(aH=c, aV=s * phase),
        "aV": _lin(aH=-s, aV=c * phase),
    }
    return bell_polynomial(BellState.PSI_PLUS).substitute(rule)


_BS_RULE = {
    "aH": _lin(aH=_R2, bH=1j * _R2),
    "aV": _lin(aV=_R2, bV=1j * _R2),
    "bH": _lin(bH=_R2, aH=1j * _R2),
    "bV": _lin(bV=_R2, aV=1j * _R2),
}


def bs_transform(p: OperatorPolynomial) -> OperatorPolynomial:
    """Pass both photons through the balanced beam splitter."""
    return p.substitute(_BS_RULE)


def coincidence_pattern(p: OperatorPolynomial) -> dict[str, float]:
    """Probability of each distinct-detector pair firing together.

    Modes are routed by the polarizing beam splitters as aH->DH1, aV->DV1,
    bH->DH2, bV->DV2.  Doubly occupied modes never give a coincidence.
    """
    if abs(p.norm() - 1) > NORM_ATOL:
        raise ValueError(f"state is not normalized (norm {p.norm():.6g})")
    if p.degree() - {2}:
        raise ValueError("coincidence patterns are defined for two-photon states only")
    pattern = {pair: 0.0 for pair in PAIRS}
    for (m1, m2), c in p.terms.items():
        if m1 == m2:
            continue
        pair = _PAIR_LOOKUP[frozenset((DETECTOR_OF[m1], DETECTOR_OF[m2]))]
        pattern[pair] += abs(c) ** 2
    return pattern


def normalized_pattern(pattern: Mapping[str, float]) -> dict[str, float]:
    """Pattern conditioned on a coincidence; all zeros when none can occur."""
    total = sum(pattern.values())
    if total <= PRUNE_ATOL**2:
        return {pair: 0.0 for pair in PAIRS}
    return {pair: pattern[pair] / total for pair in PAIRS}


def oracle_pattern(settings: EncoderSettings) -> dict[str, float]:
    return coincidence_pattern(bs_transform(encode_polynomial(settings)))
