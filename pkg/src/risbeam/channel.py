"""Narrowband channel synthesis and received-power evaluation.

One realization consists of a Rayleigh TX-RX row, a Rician TX-RIS matrix,
and a Rician RIS-RX row, each scaled by a distance power law. The RIS is
modeled as a uniform linear array; line-of-sight components use azimuth-only
steering so they stay consistent with the scalar direction used for
database matching. Training feedback is noiseless: noise enters only through
the SNR used for rate computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codebook import ReflectionPattern, pattern_to_coefficients
from .geometry import Position3D


@dataclass(frozen=True)
class ChannelParams:
    """Propagation constants. All gains are linear, not dB.

    `reference_gain` is the power gain at 1 m; the per-link exponents steep
    or flatten the distance law. `rician_k` applies to both RIS hops; the
    direct link is pure Rayleigh. The defaults describe the regime the
    surface is deployed for: a heavily obstructed direct path (exponent 4.2)
    next to elevated near-free-space hops via the surface (exponent 2.0),
    with enough scatter (K = 1) that repeated sweeps do not always crown the
    same codeword.
    """

    spacing_ratio: float = 0.5
    reference_gain: float = 5e-2
    alpha_direct: float = 4.2
    alpha_tx_ris: float = 2.0
    alpha_ris_rx: float = 2.0
    rician_k: float = 1.0
    noise_power: float = 1e-12

    def __post_init__(self):
        for name in ("alpha_direct", "alpha_tx_ris", "alpha_ris_rx"):
            if getattr(self, name) < 2.0:
                raise ValueError(f"{name} must be >= 2, got {getattr(self, name)}")
        if self.rician_k < 0:
            raise ValueError(f"rician_k must be >= 0, got {self.rician_k}")
        if self.reference_gain <= 0:
            raise ValueError(f"reference_gain must be positive, got {self.reference_gain}")
        if self.noise_power <= 0:
            raise ValueError(f"noise_power must be positive, got {self.noise_power}")
        if self.spacing_ratio <= 0:
            raise ValueError(f"spacing_ratio must be positive, got {self.spacing_ratio}")


@dataclass
class ChannelSet:
    """One realization of the three links.

    `direct` is the (M,) TX-RX row, `tx_ris` the (N, M) TX-RIS matrix and
    `ris_rx` the (N,) RIS-RX row.
    """

    direct: np.ndarray
    tx_ris: np.ndarray
    ris_rx: np.ndarray

    def __post_init__(self):
        self.direct = np.asarray(self.direct, dtype=complex)
        self.tx_ris = np.asarray(self.tx_ris, dtype=complex)
        self.ris_rx = np.asarray(self.ris_rx, dtype=complex)
        n, m = self.tx_ris.shape
        if self.direct.shape != (m,):
            raise ValueError(f"direct link must have shape ({m},), got {self.direct.shape}")
        if self.ris_rx.shape != (n,):
            raise ValueError(f"ris_rx link must have shape ({n},), got {self.ris_rx.shape}")
        for name, arr in (("direct", self.direct), ("tx_ris", self.tx_ris), ("ris_rx", self.ris_rx)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite entries")

    @property
    def num_tx_antennas(self) -> int:
        return self.tx_ris.shape[1]

    @property
    def num_ris_elements(self) -> int:
        return self.tx_ris.shape[0]


@dataclass(frozen=True)
class BeamformingVector:
    """TX beamformer with its power budget; enforces ||v||^2 == power."""

    vector: np.ndarray
    power: float

    def __post_init__(self):
        vector = np.asarray(self.vector, dtype=complex)
        if vector.ndim != 1 or vector.size < 1:
            raise ValueError("beamforming vector must be a nonempty 1-D array")
        if self.power <= 0:
            raise ValueError(f"power must be positive, got {self.power}")
        norm_sq = float(np.vdot(vector, vector).real)
        if abs(norm_sq - self.power) > 1e-9 * self.power:
            raise ValueError(
                f"||v||^2 = {norm_sq:.6e} does not match power {self.power:.6e}"
            )
        object.__setattr__(self, "vector", vector)


_path_loss_clamps = 0


def path_loss_clamp_count() -> int:
    """How many times a sub-reference distance was clamped to 1 m."""
    return _path_loss_clamps


def reset_path_loss_clamp_count() -> None:
    global _path_loss_clamps
    _path_loss_clamps = 0


def path_loss(distance: float, exponent: float, reference_gain: float) -> float:
    """Linear power gain reference_gain * distance**(-exponent).

    Distances below the 1 m reference are clamped there (the model has no
    validity closer in) and counted; read the counter via
    :func:`path_loss_clamp_count`.
    """
    global _path_loss_clamps
    if distance < 1.0:
        _path_loss_clamps += 1
        distance = 1.0
    return reference_gain * distance ** (-exponent)


def steering_vector(num_elements: int, spacing_ratio: float, angle: float) -> np.ndarray:
    """ULA response: element n carries phase 2*pi*spacing_ratio*n*cos(angle)."""
    if num_elements < 1:
        raise ValueError(f"num_elements must be >= 1, got {num_elements}")
    n = np.arange(num_elements)
    return np.exp(2j * np.pi * spacing_ratio * n * math.cos(angle))


def _complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    """Zero-mean circularly-symmetric unit-variance complex entries."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def _azimuth(target: Position3D, source: Position3D) -> float:
    dx, dy = target.horizontal_offset(source)
    return math.atan2(dy, dx)


def synthesize_channels(
    tx: Position3D,
    ris: Position3D,
    rx: Position3D,
    params: ChannelParams,
    num_tx_antennas: int,
    num_ris_elements: int,
    rng: np.random.Generator,
) -> ChannelSet:
    """Draw one realization of all three links.

    The TX-RX row is Rayleigh. Both RIS hops are Rician with factor K: the
    LOS parts are built from steering vectors at the geometric azimuths and
    the NLOS parts are i.i.d. complex Gaussian, each link scaled by the
    square root of its distance gain.
    """
    d_direct = tx.distance_to(rx)
    d_tx_ris = tx.distance_to(ris)
    d_ris_rx = ris.distance_to(rx)
    if min(d_direct, d_tx_ris, d_ris_rx) == 0.0:
        raise ValueError("zero-length hop: TX, RIS and RX positions must be distinct")

    g_direct = path_loss(d_direct, params.alpha_direct, params.reference_gain)
    g_tx_ris = path_loss(d_tx_ris, params.alpha_tx_ris, params.reference_gain)
    g_ris_rx = path_loss(d_ris_rx, params.alpha_ris_rx, params.reference_gain)

    k = params.rician_k
    los_scale = math.sqrt(k / (k + 1.0))
    nlos_scale = math.sqrt(1.0 / (k + 1.0))

    direct = math.sqrt(g_direct) * _complex_gaussian(num_tx_antennas, rng)

    ris_from_tx = steering_vector(num_ris_elements, params.spacing_ratio, _azimuth(tx, ris))
    tx_to_ris = steering_vector(num_tx_antennas, params.spacing_ratio, _azimuth(ris, tx))
    los_tx_ris = np.outer(ris_from_tx, tx_to_ris)
    tx_ris = math.sqrt(g_tx_ris) * (
        los_scale * los_tx_ris
        + nlos_scale * _complex_gaussian((num_ris_elements, num_tx_antennas), rng)
    )

    ris_to_rx = steering_vector(num_ris_elements, params.spacing_ratio, _azimuth(rx, ris))
    ris_rx = math.sqrt(g_ris_rx) * (
        los_scale * ris_to_rx + nlos_scale * _complex_gaussian(num_ris_elements, rng)
    )

    return ChannelSet(direct=direct, tx_ris=tx_ris, ris_rx=ris_rx)


def received_power(
    channels: ChannelSet, pattern: ReflectionPattern, beamformer: BeamformingVector
) -> float:
    """|(ris_rx . diag(coeffs) . tx_ris + direct) v|^2 in watts."""
    if pattern.num_elements != channels.num_ris_elements:
        raise ValueError(
            f"pattern has {pattern.num_elements} elements, channel expects "
            f"{channels.num_ris_elements}"
        )
    v = beamformer.vector
    if v.shape != (channels.num_tx_antennas,):
        raise ValueError(
            f"beamformer has shape {v.shape}, channel expects ({channels.num_tx_antennas},)"
        )
    coeffs = pattern_to_coefficients(pattern)
    amplitude = (channels.ris_rx * coeffs) @ channels.tx_ris @ v + channels.direct @ v
    return float(abs(amplitude) ** 2)


def received_power_many(
    channels: ChannelSet, coefficients: np.ndarray, beamformer: BeamformingVector
) -> np.ndarray:
    """Received power for each row of a (Q, N) coefficient matrix at once."""
    coefficients = np.asarray(coefficients)
    if coefficients.ndim != 2 or coefficients.shape[1] != channels.num_ris_elements:
        raise ValueError(
            f"coefficient matrix must be (Q, {channels.num_ris_elements}), "
            f"got {coefficients.shape}"
        )
    v = beamformer.vector
    cascade = channels.ris_rx * (channels.tx_ris @ v)
    amplitudes = coefficients @ cascade + channels.direct @ v
    return np.abs(amplitudes) ** 2


def default_tx_beamformer(channels: ChannelSet, power: float) -> BeamformingVector:
    """Maximum-ratio transmission toward the RIS.

    Returns sqrt(power) times the principal right singular vector of the
    TX-RIS matrix; this is the beamformer shared by all codebook-driven
    selection schemes within a realization.
    """
    if not np.any(channels.tx_ris):
        raise ValueError("TX-RIS matrix is zero; beamformer undefined")
    _, _, vh = np.linalg.svd(channels.tx_ris)
    principal = vh[0].conj()
    vector = math.sqrt(power) * principal / np.linalg.norm(principal)
    return BeamformingVector(vector=vector, power=power)
