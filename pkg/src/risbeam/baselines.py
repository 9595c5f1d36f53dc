"""Comparison schemes: exhaustive sweep, random pick, and a full-CSI
alternating-optimization oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import BeamformingVector, ChannelSet, received_power
from .codebook import Codebook, ReflectionPattern


@dataclass
class AOResult:
    """Alternating-optimization output: the phase profile, the matching TX
    beamformer, and the objective after each iteration."""

    phases: np.ndarray
    beamformer: BeamformingVector
    objective_trace: np.ndarray
    iterations: int


def exhaustive_search(
    channels: ChannelSet, beamformer: BeamformingVector, cb: Codebook
) -> tuple[int, int]:
    """Measure every codeword and return (best ID, overhead = Q).

    Ties go to the lowest ID.
    """
    if len(cb) < 1:
        raise ValueError("codebook is empty")
    best_id = 1
    best_power = -1.0
    for pattern_id in range(1, len(cb) + 1):
        p = received_power(channels, cb.pattern(pattern_id), beamformer)
        if p > best_power:
            best_power = p
            best_id = pattern_id
    return best_id, len(cb)


def random_selection(cb: Codebook, rng: np.random.Generator) -> tuple[int, int]:
    """Pick a codeword uniformly at random; costs no training slots."""
    if len(cb) < 1:
        raise ValueError("codebook is empty")
    return int(rng.integers(1, len(cb) + 1)), 0


def alternating_optimization(
    channels: ChannelSet, power: float, iterations: int = 3
) -> AOResult:
    """Jointly tune TX beamformer and reflection phases with full CSI.

    Each iteration applies two closed-form conditional maximizers: given the
    phases, the beamformer becomes maximum-ratio transmission to the
    effective channel; given the beamformer, each element phase rotates its
    cascaded term onto the direct term's phase. Starts from all-zero phases,
    records the received power after every iteration.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    n = channels.num_ris_elements
    phases = np.zeros(n)
    trace = np.empty(iterations)
    beamformer = None
    for it in range(iterations):
        coeffs = np.exp(1j * phases)
        h_eff = (channels.ris_rx * coeffs) @ channels.tx_ris + channels.direct
        norm = np.linalg.norm(h_eff)
        if norm == 0.0:
            raise ValueError("effective channel is zero; beamformer undefined")
        v = math.sqrt(power) * h_eff.conj() / norm
        beamformer = BeamformingVector(vector=v, power=power)

        direct_phase = np.angle(channels.direct @ v)
        cascade = channels.ris_rx * (channels.tx_ris @ v)
        phases = np.mod(direct_phase - np.angle(cascade), 2.0 * np.pi)
        # mod of a tiny negative argument can round up to exactly 2*pi
        phases[phases >= 2.0 * np.pi] = 0.0

        pattern = ReflectionPattern(phases=phases, amplitude=1.0)
        trace[it] = received_power(channels, pattern, beamformer)
    return AOResult(
        phases=phases, beamformer=beamformer, objective_trace=trace, iterations=iterations
    )


def ao_complexity(num_elements: int, iterations: int = 3) -> float:
    """Operation count charged to the full-CSI oracle: iterations * N**4.5."""
    if num_elements < 1:
        raise ValueError(f"num_elements must be >= 1, got {num_elements}")
    return iterations * num_elements**4.5
