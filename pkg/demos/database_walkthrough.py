"""Walk through the direction database frame by frame.

A tiny setup (8 codewords, 6 receivers) makes the mechanics visible: the
first visit from each direction sweeps the codebook and claims a slot, and
every return visit within the angular threshold is served instantly from
the database. The printed table mirrors the database state after each
frame: one column per codeword slot, holding the direction it learned.
"""

import math

import numpy as np

from risbeam import (
    ChannelParams,
    DirectionDatabase,
    angle_threshold,
    default_tx_beamformer,
    generate_random_codebook,
    sample_rx_position,
    select_pattern,
    selection_overhead,
    synthesize_channels,
)
from risbeam.geometry import (
    DEFAULT_RIS_POSITION,
    DEFAULT_TX_POSITION,
    ScenarioKind,
    ScenarioSpec,
    rx_angle,
)

Q = 8
N = 4
M = 4
TX_POWER = 1e-3
FRAMES = 18

rng = np.random.default_rng(7)
params = ChannelParams()
scenario = ScenarioSpec(kind=ScenarioKind.AREA_UNIFORM)

codebook = generate_random_codebook(N, Q, 1.0, rng)
db = DirectionDatabase(Q)
threshold = angle_threshold(Q)

# a small population of receivers that keep coming back
population = [sample_rx_position(scenario, rng) for _ in range(6)]
angles = [rx_angle(p, scenario.ris_position) for p in population]

print(f"codebook size Q = {Q}, matching threshold = pi/Q = {math.degrees(threshold):.1f} deg")
print(f"receiver directions: {[f'{math.degrees(a):.1f}' for a in angles]} deg\n")

header = "frame  rx  direction   event            tau  " + "  ".join(f"slot{q}" for q in range(1, Q + 1))
print(header)
print("-" * len(header))

for frame in range(FRAMES):
    idx = int(rng.integers(0, len(population)))
    rx, direction = population[idx], angles[idx]
    channels = synthesize_channels(DEFAULT_TX_POSITION, DEFAULT_RIS_POSITION, rx,
                                   params, M, N, rng)
    beamformer = default_tx_beamformer(channels, TX_POWER)
    outcome = select_pattern(db, channels, beamformer, codebook, direction, threshold)
    tau = selection_overhead(outcome)
    event = (f"match -> RP {outcome.chosen_id}" if outcome.matched
             else f"sweep -> RP {outcome.chosen_id}")
    slots = "  ".join(
        f"{math.degrees(db.get(q)):5.1f}" if not db.is_empty(q) else "    ."
        for q in range(1, Q + 1)
    )
    print(f"{frame + 1:5d}  {idx:2d}  {math.degrees(direction):7.1f}     {event:15s}  {tau:3d}  {slots}")

print("\nAfter the database covers every receiver direction, each frame costs a")
print("single slot instead of a full codebook sweep.")
