"""Frame-by-frame Monte-Carlo harness.

Each realization serves a fixed population of receivers: the pool positions
are drawn once, then every time frame one pool member requests service with
a fresh small-scale channel. Realizations are independent, with their own
codebook, database, and receiver pool, and their own random streams derived
from the master seed as master -> realization -> frame. Because every
stream is keyed rather than shared, results are identical no matter how
realizations are scheduled across workers, and matched seeds give both
scenarios the same arrival angle sequence.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

import numpy as np

from .baselines import alternating_optimization, ao_complexity, exhaustive_search, random_selection
from .channel import (
    BeamformingVector,
    ChannelParams,
    ChannelSet,
    default_tx_beamformer,
    received_power,
    synthesize_channels,
)
from .codebook import Codebook, generate_random_codebook
from .geometry import (
    DEFAULT_RIS_POSITION,
    DEFAULT_TX_POSITION,
    Position3D,
    ScenarioKind,
    ScenarioSpec,
    angle_threshold,
    rx_angle,
    sample_rx_position,
)
from .metrics import achievable_rate, effective_rate
from .selection import (
    ComplexityCount,
    DirectionDatabase,
    select_pattern,
    select_pattern_lazy,
    selection_complexity,
    selection_overhead,
)

SCHEME_DIRECTION = "direction"
SCHEME_EXHAUSTIVE = "exhaustive"
SCHEME_AO = "ao"
SCHEME_RANDOM = "random"
RATE_SCHEMES = (SCHEME_DIRECTION, SCHEME_EXHAUSTIVE, SCHEME_AO, SCHEME_RANDOM)
COMPLEXITY_SCHEMES = (SCHEME_DIRECTION, SCHEME_EXHAUSTIVE, SCHEME_AO)

# spawn-key indices under each realization
_KEY_CODEBOOK = 0
_KEY_ARRIVALS = 1
_KEY_FRAMES = 2


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs; defaults follow the standard desk-scale setup."""

    scenario: ScenarioKind = ScenarioKind.AREA_UNIFORM
    num_tx_antennas: int = 16
    num_ris_elements: int = 16
    q_list: tuple[int, ...] = (100, 200)
    tx_power_watt: float = 0.001
    coherence_slots: int = 500
    frames: int = 4000
    realizations: int = 100
    ao_iterations: int = 3
    seed: int = 0
    convergence_window: int = 100
    measure_frames: int = 100
    rx_population: int = 0
    reflection_amplitude: float = 1.0
    codebook_per_realization: bool = True
    threads: int = 0
    tx_position: Position3D = DEFAULT_TX_POSITION
    ris_position: Position3D = DEFAULT_RIS_POSITION
    area_radius: float = 15.0
    rx_height: float = 1.0
    channel: ChannelParams = field(default_factory=ChannelParams)
    output_dir: str = "."

    def __post_init__(self):
        counts = {
            "num_tx_antennas": self.num_tx_antennas,
            "num_ris_elements": self.num_ris_elements,
            "coherence_slots": self.coherence_slots,
            "frames": self.frames,
            "realizations": self.realizations,
            "ao_iterations": self.ao_iterations,
            "convergence_window": self.convergence_window,
            "measure_frames": self.measure_frames,
        }
        for name, value in counts.items():
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")
        if not self.q_list or any(q < 1 for q in self.q_list):
            raise ValueError(f"q_list must contain positive sizes, got {self.q_list}")
        if self.tx_power_watt <= 0:
            raise ValueError(f"tx_power_watt must be positive, got {self.tx_power_watt}")
        if not 0.0 <= self.reflection_amplitude <= 1.0:
            raise ValueError(
                f"reflection_amplitude must lie in [0, 1], got {self.reflection_amplitude}"
            )
        if self.threads < 0:
            raise ValueError(f"threads must be >= 0 (0 = auto), got {self.threads}")
        if self.rx_population < 0:
            raise ValueError(
                f"rx_population must be >= 0 (0 = codebook size), got {self.rx_population}"
            )
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")

    def scenario_spec(self) -> ScenarioSpec:
        return ScenarioSpec(
            kind=self.scenario,
            ris_position=self.ris_position,
            radius=self.area_radius,
            rx_height=self.rx_height,
        )


@dataclass
class TimeSeries:
    """Per-frame averages across realizations for one codebook size."""

    codebook_size: int
    frame_index: np.ndarray
    mean_q1: np.ndarray
    mean_tau: np.ndarray
    match_fraction: np.ndarray
    scheme_effective_rate: dict[str, np.ndarray] = field(default_factory=dict)


@dataclass(frozen=True)
class RateSummary:
    """Converged-phase averages for one (codebook size, scheme) pair."""

    codebook_size: int
    scheme: str
    mean_rate: float
    mean_tau: float
    mean_effective_rate: float
    converged_realizations: int
    realizations: int


@dataclass(frozen=True)
class ComplexityRow:
    codebook_size: int
    scheme: str
    complexity_count: float


@dataclass(frozen=True)
class FrameResult:
    """Per-receiver outcome of the direction scheme on one measured frame."""

    chosen_id: int
    matched: bool
    num_examined: int
    overhead: int
    rate: float
    effective: float
    complexity: ComplexityCount


def _stream(seed: int, *spawn_key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=spawn_key))


def _realization_codebook(cfg: ExperimentConfig, q: int, realization: int) -> Codebook:
    key_realization = realization if cfg.codebook_per_realization else 0
    rng = _stream(cfg.seed, key_realization, _KEY_CODEBOOK)
    return generate_random_codebook(cfg.num_ris_elements, q, cfg.reflection_amplitude, rng)


def _frame_link(
    cfg: ExperimentConfig, rx: Position3D, realization: int, frame: int
) -> tuple[ChannelSet, BeamformingVector, np.random.Generator]:
    rng = _stream(cfg.seed, realization, _KEY_FRAMES, frame)
    channels = synthesize_channels(
        cfg.tx_position,
        cfg.ris_position,
        rx,
        cfg.channel,
        cfg.num_tx_antennas,
        cfg.num_ris_elements,
        rng,
    )
    return channels, default_tx_beamformer(channels, cfg.tx_power_watt), rng


def _receiver_pool(
    cfg: ExperimentConfig, q: int, arrival_rng: np.random.Generator
) -> tuple[list[Position3D], np.ndarray]:
    """Draw the realization's receiver population and cache its azimuths."""
    size = cfg.rx_population if cfg.rx_population else q
    scenario = cfg.scenario_spec()
    positions = [sample_rx_position(scenario, arrival_rng) for _ in range(size)]
    angles = np.array([rx_angle(p, scenario.ris_position) for p in positions])
    return positions, angles


def _overhead_realization(cfg: ExperimentConfig, q: int, realization: int) -> np.ndarray:
    """One realization of the learning dynamics.

    Returns a (3, frames) array of recorded search overhead, training slots,
    and the matched flag. Matched frames record zero search overhead:
    converged service does not search.
    """
    cb = _realization_codebook(cfg, q, realization)
    db = DirectionDatabase(q)
    threshold = angle_threshold(q)
    arrival_rng = _stream(cfg.seed, realization, _KEY_ARRIVALS)
    pool, angles = _receiver_pool(cfg, q, arrival_rng)

    out = np.zeros((3, cfg.frames))
    for f in range(cfg.frames):
        idx = int(arrival_rng.integers(0, len(pool)))
        rx, direction = pool[idx], angles[idx]
        outcome = select_pattern_lazy(
            db,
            cb,
            direction,
            threshold,
            link_factory=lambda: _frame_link(cfg, rx, realization, f)[:2],
        )
        out[0, f] = 0 if outcome.matched else outcome.num_examined
        out[1, f] = selection_overhead(outcome)
        out[2, f] = outcome.matched
    return out


def run_overhead_experiment(cfg: ExperimentConfig, q: int | None = None) -> TimeSeries:
    """Learning-dynamics run: per-frame mean search overhead for one codebook size.

    Uses the first entry of `q_list` unless `q` is given explicitly.
    """
    if q is None:
        q = cfg.q_list[0]
    worker = partial(_overhead_realization, cfg, q)
    per_realization = _map_realizations(worker, cfg.realizations, cfg.threads)
    stacked = np.stack(per_realization)  # (R, 3, F)
    return TimeSeries(
        codebook_size=q,
        frame_index=np.arange(1, cfg.frames + 1),
        mean_q1=stacked[:, 0, :].mean(axis=0),
        mean_tau=stacked[:, 1, :].mean(axis=0),
        match_fraction=stacked[:, 2, :].mean(axis=0),
    )


def _measure_direction_frame(
    cfg: ExperimentConfig,
    db: DirectionDatabase,
    cb: Codebook,
    channels: ChannelSet,
    beamformer: BeamformingVector,
    direction: float,
    threshold: float,
) -> FrameResult:
    outcome = select_pattern(db, channels, beamformer, cb, direction, threshold)
    tau = selection_overhead(outcome)
    rate = achievable_rate(
        received_power(channels, cb.pattern(outcome.chosen_id), beamformer),
        cfg.channel.noise_power,
    )
    return FrameResult(
        chosen_id=outcome.chosen_id,
        matched=outcome.matched,
        num_examined=outcome.num_examined,
        overhead=tau,
        rate=rate,
        effective=effective_rate(rate, tau, cfg.coherence_slots),
        complexity=selection_complexity(outcome, cfg.num_ris_elements, len(cb)),
    )


def _rate_realization(cfg: ExperimentConfig, q: int, realization: int) -> dict:
    """Drive one realization to convergence, then measure every scheme.

    Convergence means `convergence_window` consecutive matched frames; if the
    frame budget runs out first the realization is flagged but still
    measured, so the aggregate remains defined.
    """
    cb = _realization_codebook(cfg, q, realization)
    db = DirectionDatabase(q)
    threshold = angle_threshold(q)
    arrival_rng = _stream(cfg.seed, realization, _KEY_ARRIVALS)
    pool, angles = _receiver_pool(cfg, q, arrival_rng)
    noise = cfg.channel.noise_power

    consecutive = 0
    frame = 0
    converged = False
    while frame < cfg.frames:
        idx = int(arrival_rng.integers(0, len(pool)))
        rx, direction = pool[idx], angles[idx]
        f = frame
        outcome = select_pattern_lazy(
            db,
            cb,
            direction,
            threshold,
            link_factory=lambda: _frame_link(cfg, rx, realization, f)[:2],
        )
        consecutive = consecutive + 1 if outcome.matched else 0
        frame += 1
        if consecutive >= cfg.convergence_window:
            converged = True
            break

    sums = {scheme: np.zeros(3) for scheme in RATE_SCHEMES}  # rate, tau, effective
    for _ in range(cfg.measure_frames):
        idx = int(arrival_rng.integers(0, len(pool)))
        rx, direction = pool[idx], angles[idx]
        channels, beamformer, frame_rng = _frame_link(cfg, rx, realization, frame)

        direction_frame = _measure_direction_frame(
            cfg, db, cb, channels, beamformer, direction, threshold
        )
        sums[SCHEME_DIRECTION] += (
            direction_frame.rate,
            direction_frame.overhead,
            direction_frame.effective,
        )

        best_id, tau_ex = exhaustive_search(channels, beamformer, cb)
        rate_ex = achievable_rate(received_power(channels, cb.pattern(best_id), beamformer), noise)
        sums[SCHEME_EXHAUSTIVE] += (
            rate_ex,
            tau_ex,
            effective_rate(rate_ex, tau_ex, cfg.coherence_slots),
        )

        ao = alternating_optimization(channels, cfg.tx_power_watt, cfg.ao_iterations)
        rate_ao = achievable_rate(float(ao.objective_trace[-1]), noise)
        tau_ao = cfg.num_ris_elements
        sums[SCHEME_AO] += (rate_ao, tau_ao, effective_rate(rate_ao, tau_ao, cfg.coherence_slots))

        random_id, tau_rnd = random_selection(cb, frame_rng)
        rate_rnd = achievable_rate(
            received_power(channels, cb.pattern(random_id), beamformer), noise
        )
        sums[SCHEME_RANDOM] += (
            rate_rnd,
            tau_rnd,
            effective_rate(rate_rnd, tau_rnd, cfg.coherence_slots),
        )
        frame += 1

    return {"sums": sums, "converged": converged, "measured": cfg.measure_frames}


def run_rate_experiment(cfg: ExperimentConfig) -> list[RateSummary]:
    """Converged-phase effective rate per scheme, swept over `q_list`."""
    summaries: list[RateSummary] = []
    for q in cfg.q_list:
        worker = partial(_rate_realization, cfg, q)
        results = _map_realizations(worker, cfg.realizations, cfg.threads)
        total_frames = sum(r["measured"] for r in results)
        converged = sum(1 for r in results if r["converged"])
        for scheme in RATE_SCHEMES:
            acc = np.zeros(3)
            for r in results:
                acc += r["sums"][scheme]
            summaries.append(
                RateSummary(
                    codebook_size=q,
                    scheme=scheme,
                    mean_rate=acc[0] / total_frames,
                    mean_tau=acc[1] / total_frames,
                    mean_effective_rate=acc[2] / total_frames,
                    converged_realizations=converged,
                    realizations=cfg.realizations,
                )
            )
    return summaries


def run_complexity_experiment(cfg: ExperimentConfig) -> list[ComplexityRow]:
    """Pure operation-count table across codebook sizes; nothing is simulated."""
    n = cfg.num_ris_elements
    rows: list[ComplexityRow] = []
    for q in cfg.q_list:
        rows.append(ComplexityRow(q, SCHEME_DIRECTION, float(3 * q + n)))
        rows.append(ComplexityRow(q, SCHEME_EXHAUSTIVE, float(q * n)))
        rows.append(ComplexityRow(q, SCHEME_AO, ao_complexity(n, cfg.ao_iterations)))
    return rows


def _resolve_threads(threads: int, tasks: int) -> int:
    if threads == 0:
        threads = os.cpu_count() or 1
    return max(1, min(threads, tasks))


def _map_realizations(worker, realizations: int, threads: int) -> list:
    """Run the worker for every realization index, in index order.

    The reduction order is fixed regardless of worker scheduling, so results
    are identical for any thread count.
    """
    threads = _resolve_threads(threads, realizations)
    if threads == 1:
        return [worker(r) for r in range(realizations)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(realizations)))


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_value(v) for v in row))
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"writing {path}: {exc}") from exc


def write_overhead_csv(series: TimeSeries, path: str | Path) -> None:
    rows = [
        [int(f), q1, tau, frac]
        for f, q1, tau, frac in zip(
            series.frame_index, series.mean_q1, series.mean_tau, series.match_fraction
        )
    ]
    _write_csv(path, ["frame", "mean_q1", "mean_tau", "match_fraction"], rows)


def write_rate_csv(summaries: list[RateSummary], path: str | Path) -> None:
    rows = [
        [s.codebook_size, s.scheme, s.mean_rate, s.mean_tau, s.mean_effective_rate]
        for s in summaries
    ]
    _write_csv(path, ["Q", "scheme", "mean_rate", "mean_tau", "mean_effective_rate"], rows)


def write_complexity_csv(rows: list[ComplexityRow], path: str | Path) -> None:
    body = [[r.codebook_size, r.scheme, r.complexity_count] for r in rows]
    _write_csv(path, ["Q", "scheme", "complexity_count"], body)


def emit_csv(result, path: str | Path) -> None:
    """Write any experiment result to CSV, picking the schema from its type."""
    if isinstance(result, TimeSeries):
        write_overhead_csv(result, path)
    elif isinstance(result, list) and result and isinstance(result[0], RateSummary):
        write_rate_csv(result, path)
    elif isinstance(result, list) and result and isinstance(result[0], ComplexityRow):
        write_complexity_csv(result, path)
    else:
        raise TypeError(
            "cannot infer a CSV schema; use write_overhead_csv / write_rate_csv / "
            "write_complexity_csv directly"
        )
