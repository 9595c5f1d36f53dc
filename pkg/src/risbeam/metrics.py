"""Rate, effective rate, and noise-power conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass


def noise_power(psd_dbm_per_hz: float, bandwidth_hz: float) -> float:
    """Total noise power in watts from a PSD in dBm/Hz and a bandwidth."""
    if bandwidth_hz <= 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth_hz}")
    dbm = psd_dbm_per_hz + 10.0 * math.log10(bandwidth_hz)
    return 10.0 ** ((dbm - 30.0) / 10.0)


def achievable_rate(received_power_watt: float, noise_watt: float) -> float:
    """Shannon rate log2(1 + SNR) in bits/s/Hz."""
    if noise_watt <= 0:
        raise ValueError(f"noise power must be positive, got {noise_watt}")
    if received_power_watt < 0:
        raise ValueError(f"received power must be nonnegative, got {received_power_watt}")
    return math.log2(1.0 + received_power_watt / noise_watt)


def effective_rate(rate: float, overhead_slots: float, coherence_slots: float) -> float:
    """Rate discounted by the training share of the coherence block."""
    if coherence_slots <= 0:
        raise ValueError(f"coherence_slots must be positive, got {coherence_slots}")
    if overhead_slots < 0:
        raise ValueError(f"overhead must be nonnegative, got {overhead_slots}")
    if overhead_slots > coherence_slots:
        raise ValueError(
            f"training overhead {overhead_slots} exceeds the coherence block {coherence_slots}"
        )
    return (1.0 - overhead_slots / coherence_slots) * rate


@dataclass(frozen=True)
class RateRecord:
    """A rate together with the overhead that discounts it."""

    rate: float
    overhead_slots: float
    coherence_slots: float
    effective: float

    @classmethod
    def compute(cls, rate: float, overhead_slots: float, coherence_slots: float) -> "RateRecord":
        return cls(
            rate=rate,
            overhead_slots=overhead_slots,
            coherence_slots=coherence_slots,
            effective=effective_rate(rate, overhead_slots, coherence_slots),
        )
