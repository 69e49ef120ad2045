"""Command-line front end: config ingestion, sweeps, convergence traces, CSV.

Subcommands:
    sweep     power sweep of STP/throughput over schemes and decoding methods
    converge  GA convergence traces of the delivery-phase beam at one power

Outputs are CSV with `#`-prefixed metadata comments (seed, config hash) so a
file fully identifies the run that produced it. `--plot` additionally renders
PNG figures next to the CSV.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import time
from dataclasses import dataclass

from .errors import ConfigurationError
from .gaopt import GaParams
from .linkmodel import DecodingMethod
from .orchestrator import Scheme, SimConfig, convergence_trace, desk_scale, sweep

VERSION = "0.1.0"

SWEEP_HEADER = "power_db,scheme,method,beta_star,stp,throughput_npcu,realizations,seed"
CONVERGE_HEADER = "realization_id,iteration,min_sinr_db"

_GA_KEYS = {"population_size", "elite_children", "neighbor_radius", "iterations"}
_CONFIG_KEYS = {"antennas", "realizations", "rate_npcu", "oversampling", "codebook_size",
                "ga", "beta_grid_step", "powers_db", "schemes", "methods",
                "master_seed", "use_ga", "noise_variance"}


@dataclass
class RunManifest:
    """Fully resolved execution plan for one CLI invocation."""

    config: SimConfig
    command: str
    out_path: str
    timestamp: float
    version: str = VERSION
    workers: int = 1
    plot: bool = False
    power_db: float = 60.0
    n_traces: int = 10


def config_to_dict(config: SimConfig) -> dict:
    """JSON-serializable form; round-trips through parse_config."""
    d = dataclasses.asdict(config)
    d["ga"] = dataclasses.asdict(config.ga)
    d["schemes"] = [s.value for s in config.schemes]
    d["methods"] = [m.value for m in config.methods]
    d["powers_db"] = list(config.powers_db)
    return d


def write_config(config: SimConfig, path: str) -> None:
    with open(path, "w") as f:
        json.dump(config_to_dict(config), f, indent=2, sort_keys=True)
        f.write("\n")


def config_hash(config: SimConfig) -> str:
    blob = json.dumps(config_to_dict(config), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _build_config(data: dict) -> SimConfig:
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigurationError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    kwargs = dict(data)
    if "ga" in kwargs:
        ga = kwargs["ga"]
        if not isinstance(ga, dict):
            raise ConfigurationError("key 'ga' must be an object")
        bad = set(ga) - _GA_KEYS
        if bad:
            raise ConfigurationError(f"unknown key(s) under 'ga': {', '.join(sorted(bad))}")
        try:
            kwargs["ga"] = GaParams(**ga)
        except ConfigurationError as exc:
            raise ConfigurationError(f"key 'ga': {exc}") from exc
    if "schemes" in kwargs:
        try:
            kwargs["schemes"] = tuple(Scheme(s) for s in kwargs["schemes"])
        except ValueError as exc:
            raise ConfigurationError(f"key 'schemes': {exc}") from exc
    if "methods" in kwargs:
        try:
            kwargs["methods"] = tuple(DecodingMethod(m) for m in kwargs["methods"])
        except ValueError as exc:
            raise ConfigurationError(f"key 'methods': {exc}") from exc
    if "powers_db" in kwargs:
        kwargs["powers_db"] = tuple(float(p) for p in kwargs["powers_db"])
    for key in ("antennas", "realizations", "oversampling", "master_seed"):
        if key in kwargs and not isinstance(kwargs[key], int):
            raise ConfigurationError(f"key '{key}' must be an integer")
    # SimConfig validation messages already name the offending field
    return SimConfig(**kwargs)


def parse_config(path: str | None, overrides: dict | None = None,
                 base: SimConfig | None = None) -> SimConfig:
    """Resolve a SimConfig from defaults, an optional JSON file, and flag
    overrides (highest precedence)."""
    data = config_to_dict(base) if base is not None else config_to_dict(SimConfig())
    if path is not None:
        try:
            with open(path) as f:
                raw = f.read()
        except OSError as exc:
            raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
        if raw.strip():
            try:
                file_data = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ConfigurationError(f"malformed JSON in {path}: {exc}") from exc
            if not isinstance(file_data, dict):
                raise ConfigurationError(f"config file {path} must hold a JSON object")
            unknown = set(file_data) - _CONFIG_KEYS
            if unknown:
                raise ConfigurationError(f"unknown config key(s): {', '.join(sorted(unknown))}")
            if "ga" in file_data:
                merged_ga = dict(data["ga"])
                merged_ga.update(file_data["ga"] if isinstance(file_data["ga"], dict) else {})
                file_data = dict(file_data, ga=merged_ga)
            data.update(file_data)
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    return _build_config(data)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def write_sweep_csv(rows, config: SimConfig, path: str) -> None:
    lines = [f"# seed={config.master_seed} config_hash={config_hash(config)}", SWEEP_HEADER]
    for r in rows:
        lines.append(",".join([
            _fmt(r.power_db),
            r.scheme.value,
            r.method.value if r.method is not None else "",
            _fmt(r.beta_star),
            _fmt(r.stp),
            _fmt(r.throughput_npcu),
            str(r.realizations),
            str(r.master_seed),
        ]))
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def write_converge_csv(traces, config: SimConfig, path: str) -> None:
    lines = [f"# seed={config.master_seed} config_hash={config_hash(config)}", CONVERGE_HEADER]
    for rid, trace in enumerate(traces):
        for it, value in enumerate(trace, start=1):
            lines.append(f"{rid},{it},{_fmt(float(value))}")
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def run_sweep(manifest: RunManifest) -> int:
    rows = sweep(manifest.config, workers=manifest.workers)
    write_sweep_csv(rows, manifest.config, manifest.out_path)
    if manifest.plot:
        from .plots import plot_sweep
        stem = manifest.out_path.rsplit(".", 1)[0]
        plot_sweep(rows, f"{stem}_stp.png", f"{stem}_throughput.png")
    return 0


def run_converge(manifest: RunManifest) -> int:
    traces = convergence_trace(manifest.config, manifest.power_db, manifest.n_traces)
    write_converge_csv(traces, manifest.config, manifest.out_path)
    if manifest.plot:
        from .plots import plot_convergence
        stem = manifest.out_path.rsplit(".", 1)[0]
        plot_convergence(traces, f"{stem}_traces.png")
    return 0


def _parse_powers(spec: str) -> tuple[float, ...]:
    try:
        start, step, stop = (float(x) for x in spec.split(":"))
    except ValueError as exc:
        raise ConfigurationError(f"--powers-db expects start:step:stop, got {spec!r}") from exc
    if step <= 0 or stop < start:
        raise ConfigurationError(f"--powers-db range is empty or descending: {spec!r}")
    powers = []
    p = start
    while p <= stop + 1e-9:
        powers.append(round(p, 9))
        p += step
    return tuple(powers)


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccbeam",
                                     description="Beamformed coded-caching Monte-Carlo simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("sweep", "STP/throughput power sweep"),
                            ("converge", "GA convergence traces at one power")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--seed", type=int, default=None, help="master RNG seed")
        p.add_argument("--full-scale", action="store_true",
                       help="use full-scale defaults (15000 realizations, 64-beam codebook)")
        p.add_argument("--powers-db", default=None, metavar="START:STEP:STOP",
                       help="swept powers in dB")
        p.add_argument("--workers", type=int, default=1, help="parallel workers")
        p.add_argument("--plot", action="store_true", help="render PNG figures next to the CSV")
        if name == "converge":
            p.add_argument("--power-db", type=float, default=60.0,
                           help="transmit power of the traces (dB)")
            p.add_argument("--traces", type=int, default=10,
                           help="number of example realizations")
    return parser


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        base = SimConfig() if args.full_scale else desk_scale()
        overrides = {}
        if args.seed is not None:
            overrides["master_seed"] = args.seed
        if args.powers_db is not None:
            overrides["powers_db"] = list(_parse_powers(args.powers_db))
        config = parse_config(args.config, overrides, base=base)
        manifest = RunManifest(config=config, command=args.command, out_path=args.out,
                               timestamp=time.time(), workers=max(1, args.workers),
                               plot=args.plot)
        if args.command == "converge":
            manifest.power_db = args.power_db
            manifest.n_traces = args.traces
            return run_converge(manifest)
        return run_sweep(manifest)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
