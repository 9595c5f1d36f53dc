"""Command-line front end: config loading, experiment dispatch, CSV output.

Configs are flat `key = value` text files with `#` comments. Any key can be
omitted (defaults apply) but unknown keys are rejected. Command-line flags
override the file; `RIS_SIM_THREADS` is the fallback for `--threads`.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .channel import ChannelParams
from .codebook import generate_random_codebook, save_codebook
from .experiment import (
    ExperimentConfig,
    run_complexity_experiment,
    run_overhead_experiment,
    run_rate_experiment,
    write_complexity_csv,
    write_overhead_csv,
    write_rate_csv,
)
from .geometry import Position3D, ScenarioKind
from .metrics import noise_power

THREADS_ENV_VAR = "RIS_SIM_THREADS"


class ConfigError(ValueError):
    """A configuration file or option could not be used."""


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _parse_position(text: str) -> Position3D:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected 'x,y,z', got {text!r}")
    return Position3D(*parts)


def _parse_scenario(text: str) -> ScenarioKind:
    try:
        return ScenarioKind(text.strip().lower())
    except ValueError:
        raise ValueError(f"scenario must be 'area' or 'edge', got {text!r}") from None


_CONFIG_PARSERS = {
    "scenario": _parse_scenario,
    "num_tx_antennas": int,
    "num_ris_elements": int,
    "q_list": _parse_int_list,
    "tx_power_watt": float,
    "coherence_slots": int,
    "frames": int,
    "realizations": int,
    "ao_iterations": int,
    "seed": int,
    "convergence_window": int,
    "measure_frames": int,
    "rx_population": int,
    "reflection_amplitude": float,
    "codebook_per_realization": _parse_bool,
    "threads": int,
    "tx_position": _parse_position,
    "ris_position": _parse_position,
    "area_radius": float,
    "rx_height": float,
    "spacing_ratio": float,
    "reference_gain": float,
    "alpha_direct": float,
    "alpha_tx_ris": float,
    "alpha_ris_rx": float,
    "rician_k": float,
    "noise_psd_dbm_per_hz": float,
    "bandwidth_hz": float,
    "output_dir": str,
}

_CHANNEL_KEYS = (
    "spacing_ratio",
    "reference_gain",
    "alpha_direct",
    "alpha_tx_ris",
    "alpha_ris_rx",
    "rician_k",
)
_NOISE_KEYS = ("noise_psd_dbm_per_hz", "bandwidth_hz")
_DEFAULT_NOISE_PSD_DBM_PER_HZ = -160.0
_DEFAULT_BANDWIDTH_HZ = 1e7


def _parse_config_text(text: str, source: str) -> dict:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_PARSERS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Build an ExperimentConfig from an optional file plus overrides.

    Missing keys fall back to the defaults; raises ConfigError on unreadable
    files, unknown keys, malformed values, or invariant violations.
    """
    values: dict = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        values = _parse_config_text(text, str(path))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})

    psd = values.pop("noise_psd_dbm_per_hz", _DEFAULT_NOISE_PSD_DBM_PER_HZ)
    bandwidth = values.pop("bandwidth_hz", _DEFAULT_BANDWIDTH_HZ)
    channel_kwargs = {k: values.pop(k) for k in _CHANNEL_KEYS if k in values}
    try:
        channel = ChannelParams(noise_power=noise_power(psd, bandwidth), **channel_kwargs)
        return ExperimentConfig(channel=channel, **values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _config_lines(cfg: ExperimentConfig, psd: float, bandwidth: float) -> list[str]:
    pos = lambda p: f"{p.x:g},{p.y:g},{p.z:g}"
    return [
        f"scenario = {cfg.scenario.value}",
        f"num_tx_antennas = {cfg.num_tx_antennas}",
        f"num_ris_elements = {cfg.num_ris_elements}",
        f"q_list = {','.join(str(q) for q in cfg.q_list)}",
        f"tx_power_watt = {cfg.tx_power_watt:g}",
        f"coherence_slots = {cfg.coherence_slots}",
        f"frames = {cfg.frames}",
        f"realizations = {cfg.realizations}",
        f"ao_iterations = {cfg.ao_iterations}",
        f"seed = {cfg.seed}",
        f"convergence_window = {cfg.convergence_window}",
        f"measure_frames = {cfg.measure_frames}",
        f"rx_population = {cfg.rx_population}",
        f"reflection_amplitude = {cfg.reflection_amplitude:g}",
        f"codebook_per_realization = {cfg.codebook_per_realization}",
        f"threads = {cfg.threads}",
        f"tx_position = {pos(cfg.tx_position)}",
        f"ris_position = {pos(cfg.ris_position)}",
        f"area_radius = {cfg.area_radius:g}",
        f"rx_height = {cfg.rx_height:g}",
        f"spacing_ratio = {cfg.channel.spacing_ratio:g}",
        f"reference_gain = {cfg.channel.reference_gain:g}",
        f"alpha_direct = {cfg.channel.alpha_direct:g}",
        f"alpha_tx_ris = {cfg.channel.alpha_tx_ris:g}",
        f"alpha_ris_rx = {cfg.channel.alpha_ris_rx:g}",
        f"rician_k = {cfg.channel.rician_k:g}",
        f"noise_psd_dbm_per_hz = {psd:g}",
        f"bandwidth_hz = {bandwidth:g}",
        f"output_dir = {cfg.output_dir}",
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risbeam",
        description="Monte-Carlo link simulator for RIS-assisted MISO downlink",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_flags(p):
        p.add_argument("--config", metavar="PATH", help="key = value config file")
        p.add_argument("--seed", type=int, help="master seed; fully determines all outputs")
        p.add_argument("--out", metavar="DIR", help="output directory (default from config)")
        p.add_argument(
            "--threads",
            type=int,
            help=f"worker processes, 0 = auto (env {THREADS_ENV_VAR} is the fallback)",
        )
        p.add_argument("--scenario", type=_parse_scenario, help="area or edge")
        p.add_argument("--q-list", type=_parse_int_list, help="comma-separated codebook sizes")
        p.add_argument("--frames", type=int, help="frames per realization")
        p.add_argument("--realizations", type=int, help="independent realizations")
        p.add_argument("--measure-frames", type=int, help="frames measured after convergence")

    p_overhead = sub.add_parser("overhead", help="per-frame search overhead decay")
    add_run_flags(p_overhead)
    p_rate = sub.add_parser("rate", help="converged effective rate versus codebook size")
    add_run_flags(p_rate)
    p_complex = sub.add_parser("complexity", help="operation-count table per codebook size")
    add_run_flags(p_complex)

    p_gen = sub.add_parser("gen-codebook", help="write a random codebook file")
    p_gen.add_argument("--n", type=int, required=True, help="elements per codeword")
    p_gen.add_argument("--q", type=int, required=True, help="number of codewords")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--gamma", type=float, default=1.0, help="common amplitude")
    p_gen.add_argument("--out", metavar="FILE", required=True)
    return parser


def _experiment_config_from_args(args) -> tuple[ExperimentConfig, float, float]:
    threads = args.threads
    if threads is None and THREADS_ENV_VAR in os.environ:
        try:
            threads = int(os.environ[THREADS_ENV_VAR])
        except ValueError as exc:
            raise ConfigError(f"bad {THREADS_ENV_VAR} value: {exc}") from exc
    overrides = {
        "seed": args.seed,
        "threads": threads,
        "scenario": args.scenario,
        "q_list": args.q_list,
        "frames": args.frames,
        "realizations": args.realizations,
        "measure_frames": args.measure_frames,
        "output_dir": args.out,
    }
    cfg = load_config(args.config, overrides)
    # recover the PSD/bandwidth pair for echoing the resolved config
    psd = _DEFAULT_NOISE_PSD_DBM_PER_HZ
    bandwidth = _DEFAULT_BANDWIDTH_HZ
    if args.config is not None:
        file_values = _parse_config_text(Path(args.config).read_text(), str(args.config))
        psd = file_values.get("noise_psd_dbm_per_hz", psd)
        bandwidth = file_values.get("bandwidth_hz", bandwidth)
    return cfg, psd, bandwidth


def _run_experiment(args) -> int:
    cfg, psd, bandwidth = _experiment_config_from_args(args)
    for line in _config_lines(cfg, psd, bandwidth):
        print(line, file=sys.stderr)

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if args.command == "overhead":
        for q in cfg.q_list:
            series = run_overhead_experiment(cfg, q)
            path = out_dir / f"overhead_q{q}.csv"
            write_overhead_csv(series, path)
            written.append(path)
    elif args.command == "rate":
        summaries = run_rate_experiment(cfg)
        not_converged = {
            s.codebook_size: s.realizations - s.converged_realizations
            for s in summaries
            if s.converged_realizations < s.realizations
        }
        for q, count in sorted(not_converged.items()):
            print(
                f"warning: Q={q}: {count}/{cfg.realizations} realizations did not "
                f"converge within {cfg.frames} frames",
                file=sys.stderr,
            )
        path = out_dir / "rate.csv"
        write_rate_csv(summaries, path)
        written.append(path)
    else:
        rows = run_complexity_experiment(cfg)
        path = out_dir / "complexity.csv"
        write_complexity_csv(rows, path)
        written.append(path)

    for path in written:
        print(path)
    return 0


def _run_gen_codebook(args) -> int:
    if args.n < 1 or args.q < 1:
        raise ConfigError(f"--n and --q must be >= 1, got n={args.n}, q={args.q}")
    if not 0.0 <= args.gamma <= 1.0:
        raise ConfigError(f"--gamma must lie in [0, 1], got {args.gamma}")
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    cb = generate_random_codebook(args.n, args.q, args.gamma, rng)
    save_codebook(cb, args.out)
    print(args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "gen-codebook":
            return _run_gen_codebook(args)
        return _run_experiment(args)
    except ConfigError as exc:
        print(f"risbeam: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure, not a usage problem
        print(f"risbeam: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
