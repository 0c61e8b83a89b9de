"""Monte Carlo estimates of vacuum correlations and coincidence tables.

Samples are generated in blocks aligned to absolute sample indices
(``BLOCK`` samples each).  Per-block sums are kept separately and only
combined, in block order, when an estimate is finalized, so splitting the
sample range into chunks (possibly on different workers) cannot change a
single bit of the result as long as chunk edges fall on block edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .analyzer import PAIRS, CoincidenceTable, analyze
from .source import EncoderSettings, SourceConfig, prepare
from .zpf import LinearForm, RegistryError, evaluate_many, vacuum_block

BLOCK = 8192


@dataclass(frozen=True)
class McEstimate:
    mean: complex
    stderr: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("an estimate needs at least two samples")
        if not self.stderr >= 0:
            raise ValueError(f"negative standard error {self.stderr}")

    def z_score(self, exact: complex) -> float:
        diff = abs(self.mean - exact)
        if self.stderr == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self.stderr


@dataclass
class _Accumulator:
    """Per-block sums of Re, Im, Re**2 and Im**2 for a batch of products."""

    n_products: int
    blocks: dict[int, tuple[int, np.ndarray]] = field(default_factory=dict)

    def merge(self, other: "_Accumulator") -> "_Accumulator":
        overlap = self.blocks.keys() & other.blocks.keys()
        if overlap:
            raise ValueError(f"chunks overlap on blocks {sorted(overlap)}")
        return _Accumulator(self.n_products, {**self.blocks, **other.blocks})

    def finalize(self) -> list[McEstimate]:
        n = 0
        sums = np.zeros((self.n_products, 4))
        for key in sorted(self.blocks):
            count, block_sums = self.blocks[key]
            n += count
            sums += block_sums
        if n < 2:
            raise ValueError("an estimate needs at least two samples")
        mean_re, mean_im = sums[:, 0] / n, sums[:, 1] / n
        var_re = np.maximum(sums[:, 2] - n * mean_re**2, 0.0) / (n - 1)
        var_im = np.maximum(sums[:, 3] - n * mean_im**2, 0.0) / (n - 1)
        stderr = np.sqrt((var_re + var_im) / n)
        return [
            McEstimate(complex(mean_re[k], mean_im[k]), float(stderr[k]), n)
            for k in range(self.n_products)
        ]


def partition(n: int, chunks: int) -> list[tuple[int, int]]:
    """Split ``range(n)`` into at most ``chunks`` ranges whose edges fall on block edges."""
    if chunks < 1:
        raise ValueError("chunks must be at least 1")
    n_blocks = -(-n // BLOCK)
    per_chunk = max(1, -(-n_blocks // chunks))
    edges = [min(b * BLOCK, n) for b in range(0, n_blocks + 1, per_chunk)]
    if edges[-1] != n:
        edges.append(n)
    return [(lo, hi) for lo, hi in zip(edges, edges[1:]) if hi > lo]


def _accumulate(
    forms: Sequence[LinearForm],
    products: Sequence[tuple[int, int]],
    seed: int,
    start: int,
    stop: int,
) -> _Accumulator:
    if start % BLOCK:
        raise ValueError(f"chunk start {start} is not aligned to the {BLOCK}-sample block grid")
    n_modes = len(forms[0].registry)
    acc = _Accumulator(len(products))
    for lo in range(start, stop, BLOCK):
        hi = min(lo + BLOCK, stop)
        samples = vacuum_block(n_modes, seed, lo, hi)
        values = [evaluate_many(f, samples) for f in forms]
        block_sums = np.empty((len(products), 4))
        for k, (i, j) in enumerate(products):
            prod = values[i] * values[j]
            re, im = prod.real, prod.imag
            block_sums[k] = (re.sum(), im.sum(), (re * re).sum(), (im * im).sum())
        acc.blocks[lo // BLOCK] = (hi - lo, block_sums)
    return acc


def estimate_products(
    forms: Sequence[LinearForm],
    products: Sequence[tuple[int, int]],
    seed: int,
    n: int,
    chunks: int = 1,
    map_fn: Callable = map,
) -> list[McEstimate]:
    """Sample means of ``forms[i] * forms[j]`` for each ``(i, j)`` in ``products``.

    All products share one sample stream.  ``map_fn`` may be an executor's
    ``map`` to spread chunks over workers; the result does not depend on it.
    """
    if n < 2:
        raise ValueError(f"need at least two samples, got n={n}")
    registry = forms[0].registry
    if any(f.registry is not registry for f in forms):
        raise RegistryError("linear forms belong to different mode registries")
    ranges = partition(n, chunks)
    parts = list(map_fn(lambda r: _accumulate(forms, products, seed, *r), ranges))
    acc = parts[0]
    for part in parts[1:]:
        acc = acc.merge(part)
    return acc.finalize()


def mc_correlation(a: LinearForm, b: LinearForm, seed: int, n: int, chunks: int = 1) -> McEstimate:
    """Monte Carlo estimate of ``<a b>`` from ``n`` vacuum samples."""
    return estimate_products([a, b], [(0, 1)], seed, n, chunks)[0]


def squared_modulus(est: McEstimate) -> tuple[float, float]:
    """``|mean|**2`` with a delta-method error floored at ``stderr**2``."""
    value = abs(est.mean) ** 2
    err = max(2 * abs(est.mean) * est.stderr, est.stderr**2)
    return value, err


@dataclass(frozen=True)
class McTableResult:
    table: CoincidenceTable
    stderr: dict[str, float]
    correlations: dict[str, McEstimate]
    idle: dict[str, McEstimate]

    def z_scores(self, exact: CoincidenceTable) -> dict[str, float]:
        out = {}
        for pair in PAIRS:
            diff = abs(self.table[pair] - exact[pair])
            err = self.stderr[pair]
            out[pair] = diff / err if err > 0 else (0.0 if diff == 0 else math.inf)
        return out


def mc_table(
    settings: EncoderSettings,
    cfg: SourceConfig | None = None,
    seed: int = 1,
    n: int = 200_000,
    chunks: int = 1,
    map_fn: Callable = map,
) -> McTableResult:
    """Sampled coincidence table with per-entry errors and idle-port diagnostics.

    Each entry is ``|<signal_a signal_b>|**2`` estimated from the shared
    sample stream.  The correlations of every idle component with the other
    detector's components are estimated too and reported under ``idle``;
    they should be consistent with zero.
    """
    cfg = cfg or SourceConfig()
    registry, beam1, beam2 = prepare(settings, cfg)
    fields = analyze(beam1, beam2, registry)
    names = ["DH1", "DV1", "DH2", "DV2"]
    forms = [fields[d].signal for d in names] + [fields[d].idle for d in names]
    index = {d: k for k, d in enumerate(names)}
    products, labels = [], []
    for pair in PAIRS:
        a, b = pair.split("_")
        products.append((index[a], index[b]))
        labels.append(pair)
    idle_labels = []
    for pair in PAIRS:
        a, b = pair.split("_")
        for (x, xi), (y, yi) in (
            ((a, index[a]), (f"{b}.idle", 4 + index[b])),
            ((f"{a}.idle", 4 + index[a]), (b, index[b])),
            ((f"{a}.idle", 4 + index[a]), (f"{b}.idle", 4 + index[b])),
        ):
            products.append((xi, yi))
            idle_labels.append(f"{x}*{y}")
    estimates = estimate_products(forms, products, seed, n, chunks, map_fn)
    correlations = dict(zip(labels, estimates[: len(labels)]))
    idle = dict(zip(idle_labels, estimates[len(labels):]))
    p, err = {}, {}
    for pair, est in correlations.items():
        p[pair], err[pair] = squared_modulus(est)
    table = CoincidenceTable(p, scale=cfg.g**2, meta={"engine": "mc", "seed": seed, "samples": n})
    return McTableResult(table, err, correlations, idle)


def mc_coincidence_table(
    settings: EncoderSettings, cfg: SourceConfig | None = None, seed: int = 1, n: int = 200_000, chunks: int = 1
) -> tuple[CoincidenceTable, dict[str, float]]:
    result = mc_table(settings, cfg, seed, n, chunks)
    return result.table, result.stderr


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    estimate: complex
    stderr: float


@dataclass(frozen=True)
class ConvergenceReport:
    pair: str
    rows: tuple[ConvergenceRow, ...]

    def __post_init__(self):
        ns = [r.n for r in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("sample sizes must be strictly increasing")

    def stderr_ratios(self) -> list[float]:
        return [b.stderr / a.stderr for a, b in zip(self.rows, self.rows[1:])]


def convergence_report(
    settings: EncoderSettings,
    cfg: SourceConfig | None,
    seed: int,
    n_list: Iterable[int],
    pair: str = "DH1_DV2",
) -> ConvergenceReport:
    """Signal correlation of one detector pair estimated at several sample sizes.

    Every row uses a prefix of the same sample stream.
    """
    if pair not in PAIRS:
        raise ValueError(f"unknown detector pair {pair!r}")
    n_list = list(n_list)
    if any(n < 2 for n in n_list):
        raise ValueError("every sample size must be at least 2")
    cfg = cfg or SourceConfig()
    registry, beam1, beam2 = prepare(settings, cfg)
    fields = analyze(beam1, beam2, registry)
    a, b = pair.split("_")
    forms = [fields[a].signal, fields[b].signal]
    rows = []
    for n in n_list:
        est = estimate_products(forms, [(0, 1)], seed, n)[0]
        rows.append(ConvergenceRow(n, est.mean, est.stderr))
    return ConvergenceReport(pair, tuple(rows))
