"""Exit criteria for the build; each test records a PASS/FAIL line."""

import json
import math
import subprocess
import sys
import time

from wignerbell.analyzer import PAIRS, Classification, analyze, classify, coincidence_table, exact_table
from wignerbell.hilbert import normalized_pattern, oracle_pattern
from wignerbell.montecarlo import convergence_report, mc_table
from wignerbell.source import BellState, EncoderSettings, SourceConfig, encode_settings, prepare
from wignerbell.zpf import exact_correlation

G = 0.1
CFG = SourceConfig(G)
TOL = 1e-12
BETAS = (0.0, math.pi / 4, -math.pi / 4, math.pi / 2, -math.pi / 2)
KAPPAS = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)
GRID = [EncoderSettings(b, k) for b in BETAS for k in KAPPAS]


def test_ac1_forbidden_coincidences(criterion):
    start = time.perf_counter()
    worst = 0.0
    for settings in GRID:
        t = exact_table(settings, CFG)
        worst = max(worst, t["DH1_DH2"], t["DV1_DV2"])
    elapsed = time.perf_counter() - start
    criterion(
        "AC1 forbidden HH/VV coincidences vanish on the 20-point grid",
        len(GRID) == 20 and worst <= TOL and elapsed < 1.0,
        f"max={worst:.2e}, {elapsed:.3f}s",
    )


def test_ac2_closed_form_surfaces(criterion):
    worst, symmetric = 0.0, True
    for s in GRID:
        t = exact_table(s, CFG)
        weight = math.cos(s.beta) ** 2 / 2
        cross = weight * (1 + math.cos(s.kappa + math.pi))
        same = weight * (1 + math.cos(s.kappa))
        worst = max(worst, abs(t["DH1_DV2"] / G**2 - cross), abs(t["DH1_DV1"] / G**2 - same))
        symmetric &= t["DH1_DV2"] == t["DV1_DH2"] and t["DH1_DV1"] == t["DH2_DV2"]
    criterion(
        "AC2 closed-form cross/same-channel surfaces and pair symmetries",
        worst <= TOL and symmetric,
        f"max residual={worst:.2e}, symmetric={symmetric}",
    )


def test_ac3_discrimination(criterion):
    start = time.perf_counter()
    cases = {
        (0.0, math.pi): Classification.PSI_MINUS,
        (0.0, 0.0): Classification.PSI_PLUS,
        (-math.pi / 2, 0.0): Classification.PHI_CLASS,
        (-math.pi / 2, math.pi): Classification.PHI_CLASS,
    }
    got = {k: classify(exact_table(EncoderSettings(*k), CFG)) for k in cases}
    again = {k: classify(exact_table(EncoderSettings(*k), CFG)) for k in cases}
    elapsed = time.perf_counter() - start
    criterion(
        "AC3 exact tables classify psi-, psi+, phi class",
        got == cases and again == got and elapsed < 1.0,
        f"{[v.value for v in got.values()]}, {elapsed:.3f}s",
    )


def test_ac4_singlet_invariance(criterion):
    reg, b1, b2 = prepare(encode_settings(BellState.PSI_MINUS), CFG)
    source_value = abs(exact_correlation(b1.h, b2.v))
    f = analyze(b1, b2, reg)
    singlet = abs(abs(exact_correlation(f.out1.h, f.out2.v)) - G)
    reg, b1, b2 = prepare(encode_settings(BellState.PSI_PLUS), CFG)
    f = analyze(b1, b2, reg)
    triplet_cross = abs(exact_correlation(f.out1.h, f.out2.v))
    triplet_same = abs(exact_correlation(f.out1.h, f.out1.v) - 1j * G)
    ok = abs(source_value - G) <= TOL and singlet <= TOL and triplet_cross <= TOL and triplet_same <= TOL
    criterion(
        "AC4 singlet correlation survives the beam splitter; psi+ moves to same beam",
        ok,
        f"singlet dev={singlet:.1e}, psi+ cross={triplet_cross:.1e}, psi+ same dev={triplet_same:.1e}",
    )


def test_ac5_monte_carlo(criterion):
    start = time.perf_counter()
    worst, worst_label = 0.0, ""
    for state in BellState:
        settings = encode_settings(state)
        result = mc_table(settings, CFG, seed=1, n=200_000)
        for pair, z in result.z_scores(exact_table(settings, CFG)).items():
            if z > worst:
                worst, worst_label = z, f"{state.value}:{pair}"
    report = convergence_report(encode_settings(BellState.PSI_MINUS), CFG, 1, [200_000, 800_000])
    (ratio,) = report.stderr_ratios()
    elapsed = time.perf_counter() - start
    criterion(
        "AC5 Monte Carlo tables within 5 stderr; stderr(4n)/stderr(n) in [0.45, 0.55]",
        worst <= 5 and 0.45 <= ratio <= 0.55 and elapsed < 30,
        f"max z={worst:.2f} at {worst_label}, ratio={ratio:.4f}, {elapsed:.1f}s",
    )


def test_ac6_oracle_equivalence(criterion):
    worst = 0.0
    for state in BellState:
        settings = encode_settings(state)
        wigner = exact_table(settings, CFG).normalized()
        oracle = normalized_pattern(oracle_pattern(settings))
        worst = max(worst, max(abs(wigner[p] - oracle[p]) for p in PAIRS))
    psi_minus = normalized_pattern(oracle_pattern(encode_settings(BellState.PSI_MINUS)))
    psi_plus = normalized_pattern(oracle_pattern(encode_settings(BellState.PSI_PLUS)))
    phi = [oracle_pattern(encode_settings(s)) for s in (BellState.PHI_PLUS, BellState.PHI_MINUS)]
    shapes = (
        abs(psi_minus["DH1_DV2"] - 0.5) <= TOL
        and abs(psi_minus["DV1_DH2"] - 0.5) <= TOL
        and abs(psi_plus["DH1_DV1"] - 0.5) <= TOL
        and abs(psi_plus["DH2_DV2"] - 0.5) <= TOL
        and all(v == 0 for p in phi for v in p.values())
    )
    criterion(
        "AC6 normalized Wigner tables equal Fock-space patterns",
        worst <= TOL and shapes,
        f"max diff={worst:.1e}",
    )


def test_ac7_idle_independence(criterion):
    nonzero, mismatched = 0, 0
    for settings in GRID:
        reg, b1, b2 = prepare(settings, CFG)
        f = analyze(b1, b2, reg)
        detectors = f.detectors()
        signals = [d.signal for d in detectors]
        idles = [d.idle for d in detectors]
        for idle in idles:
            for other in signals + [i for i in idles if i is not idle]:
                if exact_correlation(idle, other) != 0 or exact_correlation(other, idle) != 0:
                    nonzero += 1
        full = coincidence_table(f)
        signal_only = coincidence_table(f, include_idle=False)
        mismatched += sum(full[p] != signal_only[p] for p in PAIRS)
    criterion(
        "AC7 idle vacuum uncorrelated with signals and other idles; idle terms add exactly 0",
        nonzero == 0 and mismatched == 0,
        f"nonzero={nonzero}, mismatched entries={mismatched}",
    )


def test_ac8_cli_reproducible(criterion):
    cmd = [sys.executable, "-m", "wignerbell", "--state", "psi-", "--engine", "all", "--seed", "1"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    doc = json.loads(first)
    criterion(
        "AC8 identical CLI config gives byte-identical JSON",
        first == second and doc["config"]["seed"] == 1,
        f"{len(first)} bytes",
    )
