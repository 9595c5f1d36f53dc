"""Monte-Carlo link simulator for an RIS-assisted MISO downlink.

A reconfigurable surface redirects the transmitter's signal toward each
receiver by applying one of Q stored phase patterns. This package
implements direction-matched pattern selection backed by a learned
direction database, the exhaustive / random / full-CSI baselines it is
measured against, and the Monte-Carlo experiments that track search
overhead, effective rate, and operation counts over time.
"""

from .baselines import AOResult, alternating_optimization, ao_complexity, exhaustive_search, random_selection
from .channel import (
    BeamformingVector,
    ChannelParams,
    ChannelSet,
    default_tx_beamformer,
    path_loss,
    received_power,
    received_power_many,
    steering_vector,
    synthesize_channels,
)
from .codebook import (
    Codebook,
    ReflectionPattern,
    generate_random_codebook,
    load_codebook,
    pattern_to_coefficients,
    save_codebook,
)
from .experiment import (
    ComplexityRow,
    ExperimentConfig,
    FrameResult,
    RateSummary,
    TimeSeries,
    emit_csv,
    run_complexity_experiment,
    run_overhead_experiment,
    run_rate_experiment,
)
from .geometry import (
    Position3D,
    RxArrival,
    ScenarioKind,
    ScenarioSpec,
    angle_threshold,
    rx_angle,
    sample_rx_arrival,
    sample_rx_position,
)
from .metrics import RateRecord, achievable_rate, effective_rate, noise_power
from .selection import (
    ComplexityCount,
    DirectionDatabase,
    SelectionOutcome,
    search_best,
    select_pattern,
    select_pattern_lazy,
    selection_complexity,
    selection_overhead,
    try_match,
)

__version__ = "0.1.0"
