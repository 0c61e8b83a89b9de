"""Command-line front end.

Examples::

    wignerbell --state psi- --engine exact
    wignerbell --beta 0 --kappa pi/2 --engine all --format csv
    wignerbell --sweep "beta=-pi/2:pi/2:5,kappa=0:pi:5"
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass

from .analyzer import (
    EXACT_EPSILON,
    MC_EPSILON,
    PAIRS,
    CoincidenceTable,
    classify,
    exact_table,
)
from .hilbert import normalized_pattern, oracle_pattern
from .montecarlo import mc_table
from .source import BellState, EncoderSettings, SourceConfig, encode_settings

ENGINES = ("exact", "mc", "oracle", "all")
_STATE_CHOICES = ("psi+", "psi-", "phi+", "phi-", "psi-plus", "psi-minus", "phi-plus", "phi-minus")
_ANGLE = re.compile(r"^\s*([+-]?)\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Radians from a decimal or a multiple of pi such as ``-pi/2`` or ``3pi/2``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _ANGLE.match(text)
    if not m:
        raise UsageError(f"cannot read angle {text!r}")
    sign, factor, divisor = m.groups()
    value = (float(factor) if factor else 1.0) * math.pi / (float(divisor) if divisor else 1.0)
    return -value if sign == "-" else value


@dataclass(frozen=True)
class RunConfig:
    state: str | None = None
    beta: float | None = None
    kappa: float | None = None
    engine: str = "exact"
    samples: int = 200_000
    seed: int = 1
    coupling: float = 0.1
    epsilon: float | None = None
    format: str = "json"

    def __post_init__(self):
        has_angles = self.beta is not None or self.kappa is not None
        if self.state is not None and has_angles:
            raise UsageError("give either --state or --beta/--kappa, not both")
        if self.state is None and (self.beta is None or self.kappa is None):
            raise UsageError("give --state, or both --beta and --kappa")
        if self.engine not in ENGINES:
            raise UsageError(f"unknown engine {self.engine!r}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.engine in ("mc", "all") and self.samples < 2:
            raise UsageError("--samples must be at least 2")
        if not self.coupling > 0:
            raise UsageError("--coupling must be positive")
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise UsageError("--epsilon must lie in (0, 1)")
        if self.seed < 0:
            raise UsageError("--seed must be non-negative")

    def settings(self) -> EncoderSettings:
        if self.state is not None:
            return encode_settings(BellState.parse(self.state))
        return EncoderSettings(self.beta, self.kappa)

    def engines(self) -> tuple[str, ...]:
        return ("exact", "mc", "oracle") if self.engine == "all" else (self.engine,)


def _eps(config: RunConfig, engine: str) -> float:
    if config.epsilon is not None:
        return config.epsilon
    return MC_EPSILON if engine == "mc" else EXACT_EPSILON


def run(config: RunConfig) -> dict:
    """Evaluate the requested engines for one encoder setting."""
    settings = config.settings()
    cfg = SourceConfig(config.coupling)
    sections: dict[str, dict] = {}
    for engine in config.engines():
        if engine == "exact":
            table = exact_table(settings, cfg)
            sections["exact"] = {
                "table": table.as_dict(),
                "normalized_table": table.normalized(),
                "classification": classify(table, _eps(config, engine)).value,
            }
        elif engine == "mc":
            result = mc_table(settings, cfg, config.seed, config.samples)
            sections["mc"] = {
                "table": result.table.as_dict(),
                "normalized_table": result.table.normalized(),
                "stderr": result.stderr,
                "samples": config.samples,
                "classification": classify(result.table, _eps(config, engine)).value,
            }
        else:
            pattern = oracle_pattern(settings)
            # the pattern is already a probability table; unit scale
            table = CoincidenceTable(pattern, scale=1.0)
            sections["oracle"] = {
                "pattern": pattern,
                "table": table.as_dict(),
                "normalized_table": normalized_pattern(pattern),
                "classification": classify(table, _eps(config, engine)).value,
            }
    primary = next(e for e in ("exact", "mc", "oracle") if e in sections)
    doc = {
        "config": asdict(config),
        "settings": {"beta": settings.beta, "kappa": settings.kappa},
        "primary_engine": primary,
        "scale": 1.0 if primary == "oracle" else cfg.g**2,
        "table": sections[primary]["table"],
        "normalized_table": sections[primary]["normalized_table"],
        "classification": sections[primary]["classification"],
    }
    if "mc" in sections:
        doc["stderr"] = sections["mc"]["stderr"]
    if "oracle" in sections:
        doc["pattern"] = sections["oracle"]["pattern"]
    doc["engines"] = sections
    return doc


def closed_form(beta: float, kappa: float) -> tuple[float, float]:
    """Cross-channel and same-channel coincidences in units of ``g**2``."""
    weight = math.cos(beta) ** 2 / 2
    return weight * (1 + math.cos(kappa + math.pi)), weight * (1 + math.cos(kappa))


def parse_grid(spec: str) -> dict[str, list[float]]:
    """``"beta=start:stop:steps,kappa=start:stop:steps"`` to inclusive grids."""
    grids = {}
    for part in spec.split(","):
        name, _, rng = part.partition("=")
        name = name.strip()
        if name not in ("beta", "kappa") or not rng:
            raise UsageError(f"bad sweep component {part!r}")
        fields = rng.split(":")
        if len(fields) == 1:
            grids[name] = [parse_angle(fields[0])]
            continue
        if len(fields) != 3:
            raise UsageError(f"sweep range {rng!r} must be start:stop:steps")
        start, stop = parse_angle(fields[0]), parse_angle(fields[1])
        try:
            steps = int(fields[2])
        except ValueError:
            raise UsageError(f"step count {fields[2]!r} is not an integer") from None
        if steps < 1:
            raise UsageError("sweep grids must be nonempty")
        if steps == 1:
            grids[name] = [start]
        else:
            grids[name] = [start + (stop - start) * k / (steps - 1) for k in range(steps)]
    if set(grids) != {"beta", "kappa"}:
        raise UsageError("sweep needs both a beta and a kappa grid")
    return grids


def sweep(beta_grid: list[float], kappa_grid: list[float], config: RunConfig) -> dict:
    """Tabulate the coincidence table over a grid of encoder settings.

    Pair columns are in units of ``g**2`` so they compare directly with
    the closed-form surfaces.
    """
    if not beta_grid or not kappa_grid:
        raise UsageError("sweep grids must be nonempty")
    if config.engine not in ("exact", "mc"):
        raise UsageError("sweeps run with the exact or mc engine")
    cfg = SourceConfig(config.coupling)
    eps = _eps(config, config.engine)
    rows, worst = [], 0.0
    for beta in beta_grid:
        for kappa in kappa_grid:
            settings = EncoderSettings(beta, kappa)
            if config.engine == "exact":
                table = exact_table(settings, cfg)
            else:
                table = mc_table(settings, cfg, config.seed, config.samples).table
            rel = table.relative()
            cross, same = closed_form(beta, kappa)
            residual = max(
                abs(rel["DH1_DV2"] - cross),
                abs(rel["DV1_DH2"] - cross),
                abs(rel["DH1_DV1"] - same),
                abs(rel["DH2_DV2"] - same),
                rel["DH1_DH2"],
                rel["DV1_DV2"],
            )
            worst = max(worst, residual)
            rows.append(
                {
                    "beta": beta,
                    "kappa": kappa,
                    "table": rel,
                    "cross_channel": (rel["DH1_DV2"] + rel["DV1_DH2"]) / 2,
                    "same_channel": (rel["DH1_DV1"] + rel["DH2_DV2"]) / 2,
                    "residual": residual,
                    "classification": classify(table, eps).value,
                }
            )
    return {"config": asdict(config), "rows": rows, "max_residual": worst}


def format_run_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["engine", "beta", "kappa", *PAIRS, "classification"])
    for engine, section in doc["engines"].items():
        writer.writerow(
            [engine, repr(doc["settings"]["beta"]), repr(doc["settings"]["kappa"])]
            + [repr(section["table"][p]) for p in PAIRS]
            + [section["classification"]]
        )
    return buf.getvalue()


def format_sweep_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["beta", "kappa", *PAIRS, "classification"])
    for row in doc["rows"]:
        writer.writerow(
            [repr(row["beta"]), repr(row["kappa"])]
            + [repr(row["table"][p]) for p in PAIRS]
            + [row["classification"]]
        )
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerbell",
        description="Coincidence tables of a partial Bell-state analyzer fed by down-converted light.",
    )
    parser.add_argument("--state", choices=_STATE_CHOICES, help="Bell state Bob encodes")
    parser.add_argument("--beta", type=str, help="rotator angle in radians (decimal or multiple of pi)")
    parser.add_argument("--kappa", type=str, help="retarder phase in radians")
    parser.add_argument("--engine", choices=ENGINES, default="exact")
    parser.add_argument("--samples", type=int, default=200_000, help="Monte Carlo sample count")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--coupling", type=float, default=0.1, help="crystal coupling g")
    parser.add_argument("--epsilon", type=float, default=None, help="classification threshold")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--sweep", metavar="GRID", help='e.g. "beta=0:0:1,kappa=0:pi:2"')
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.sweep:
            if args.state or args.beta is not None or args.kappa is not None:
                raise UsageError("--sweep replaces --state/--beta/--kappa")
            grids = parse_grid(args.sweep)
            config = RunConfig(
                beta=grids["beta"][0],
                kappa=grids["kappa"][0],
                engine=args.engine,
                samples=args.samples,
                seed=args.seed,
                coupling=args.coupling,
                epsilon=args.epsilon,
                format=args.format,
            )
            doc = sweep(grids["beta"], grids["kappa"], config)
            doc["config"]["sweep"] = args.sweep
            text = format_sweep_csv(doc) if args.format == "csv" else json.dumps(doc, indent=2) + "\n"
        else:
            config = RunConfig(
                state=args.state,
                beta=None if args.beta is None else parse_angle(args.beta),
                kappa=None if args.kappa is None else parse_angle(args.kappa),
                engine=args.engine,
                samples=args.samples,
                seed=args.seed,
                coupling=args.coupling,
                epsilon=args.epsilon,
                format=args.format,
            )
            doc = run(config)
            text = format_run_csv(doc) if args.format == "csv" else json.dumps(doc, indent=2) + "\n"
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
