import numpy as np
import pytest

from risbeam.channel import ChannelParams, default_tx_beamformer, synthesize_channels
from risbeam.geometry import (
    DEFAULT_RIS_POSITION,
    DEFAULT_TX_POSITION,
    ScenarioKind,
    ScenarioSpec,
    sample_rx_position,
)

TX_POWER = 1e-3


def make_link(rng, m=16, n=16, params=None, scenario_kind=ScenarioKind.AREA_UNIFORM):
    """One random receiver plus its channel realization and MRT beamformer."""
    params = params or ChannelParams()
    scenario = ScenarioSpec(kind=scenario_kind)
    rx = sample_rx_position(scenario, rng)
    channels = synthesize_channels(
        DEFAULT_TX_POSITION, DEFAULT_RIS_POSITION, rx, params, m, n, rng
    )
    return rx, channels, default_tx_beamformer(channels, TX_POWER)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
