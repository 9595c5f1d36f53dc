"""Direction-database codeword selection.

The database keeps one optional stored direction per codeword. A new
receiver first scans the database in ID order; the first stored direction
within the angular threshold wins immediately. If no entry matches, every
codeword is measured and the received power argmax both serves the receiver
and claims the slot, overwriting whatever direction that slot held before.
Matches leave the database untouched: only searches write, so once the
stored directions cover the arrival angles the database freezes and every
later receiver is served without searching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .channel import BeamformingVector, ChannelSet, received_power_many
from .codebook import Codebook


class DirectionDatabase:
    """Fixed-size table of codeword ID -> last stored receiver direction."""

    def __init__(self, size: int):
        if size < 1:
            raise ValueError(f"database size must be >= 1, got {size}")
        self._angles = np.full(size, np.nan)

    def __len__(self) -> int:
        return self._angles.size

    def is_empty(self, slot_id: int) -> bool:
        return math.isnan(self._angles[self._index(slot_id)])

    def get(self, slot_id: int) -> float | None:
        value = self._angles[self._index(slot_id)]
        return None if math.isnan(value) else float(value)

    def store(self, slot_id: int, angle: float) -> None:
        if not 0.0 <= angle <= math.pi:
            raise ValueError(f"stored angles must lie in [0, pi], got {angle}")
        self._angles[self._index(slot_id)] = angle

    @property
    def filled_count(self) -> int:
        return int(np.count_nonzero(~np.isnan(self._angles)))

    def stored_angles(self) -> np.ndarray:
        """All currently stored directions (order not meaningful)."""
        return self._angles[~np.isnan(self._angles)].copy()

    def angles_view(self) -> np.ndarray:
        """Raw slot array with NaN for empty slots; do not mutate."""
        return self._angles

    def _index(self, slot_id: int) -> int:
        if not 1 <= slot_id <= len(self):
            raise ValueError(f"slot id {slot_id} outside 1..{len(self)}")
        return slot_id - 1

    def save(self, path: str | Path) -> None:
        """One line per slot: `id angle` or `id EMPTY`."""
        lines = []
        for i, value in enumerate(self._angles, start=1):
            lines.append(f"{i} EMPTY" if math.isnan(value) else f"{i} {value:.17g}")
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "DirectionDatabase":
        rows = [line.split() for line in Path(path).read_text().splitlines() if line.strip()]
        if not rows:
            raise ValueError(f"{path}: empty database snapshot")
        db = cls(len(rows))
        for expected, row in enumerate(rows, start=1):
            if len(row) != 2 or int(row[0]) != expected:
                raise ValueError(f"{path}: malformed snapshot line {expected}: {' '.join(row)!r}")
            if row[1] != "EMPTY":
                db.store(expected, float(row[1]))
        return db


@dataclass(frozen=True)
class SelectionOutcome:
    """What one selection did: the codeword, how it was found, and at what cost.

    `num_examined` counts the codewords appended for searching before the
    scan ended; on a match it excludes the matching slot and
    `candidate_powers` is empty, otherwise it equals the codebook size and
    `candidate_powers` holds one measured power per candidate.
    """

    chosen_id: int
    matched: bool
    num_examined: int
    candidate_ids: np.ndarray
    candidate_powers: np.ndarray


@dataclass(frozen=True)
class ComplexityCount:
    """Operation counts for one selection: scan bookkeeping plus configuration."""

    scan_ops: int
    config_ops: int

    @property
    def total(self) -> int:
        return self.scan_ops + self.config_ops


def try_match(
    db: DirectionDatabase, rx_direction: float, threshold: float
) -> tuple[int | None, np.ndarray]:
    """Scan slots in ID order for the first stored direction within threshold.

    Returns (matched_id, candidate_ids). On a match, candidates are the IDs
    examined before it; otherwise matched_id is None and every ID is a
    search candidate, empty and non-matching filled slots alike.
    """
    if not 0.0 <= rx_direction <= math.pi:
        raise ValueError(f"rx_direction must lie in [0, pi], got {rx_direction}")
    angles = db.angles_view()
    hits = np.abs(angles - rx_direction) <= threshold  # NaN compares False
    if hits.any():
        first = int(np.argmax(hits))
        return first + 1, np.arange(1, first + 1)
    return None, np.arange(1, len(db) + 1)


def search_best(
    channels: ChannelSet,
    beamformer: BeamformingVector,
    cb: Codebook,
    candidate_ids: np.ndarray,
) -> tuple[int, np.ndarray]:
    """Measure every candidate and return (argmax ID, measured powers).

    Ties go to the lowest ID.
    """
    candidate_ids = np.asarray(candidate_ids, dtype=int)
    if candidate_ids.size == 0:
        raise ValueError("candidate list is empty; nothing to search")
    coeffs = cb.coefficients()[candidate_ids - 1]
    powers = received_power_many(channels, coeffs, beamformer)
    winner = int(candidate_ids[int(np.argmax(powers))])
    return winner, powers


def select_pattern(
    db: DirectionDatabase,
    channels: ChannelSet,
    beamformer: BeamformingVector,
    cb: Codebook,
    rx_direction: float,
    threshold: float,
) -> SelectionOutcome:
    """Run one full selection against the database.

    A match writes nothing; a search writes the winner's slot. At most one
    slot changes per call.
    """
    if len(db) != len(cb):
        raise ValueError(f"database size {len(db)} does not match codebook size {len(cb)}")
    matched_id, candidates = try_match(db, rx_direction, threshold)
    if matched_id is not None:
        return _record_match(matched_id, candidates)
    return _record_search(db, channels, beamformer, cb, candidates, rx_direction)


def select_pattern_lazy(
    db: DirectionDatabase,
    cb: Codebook,
    rx_direction: float,
    threshold: float,
    link_factory: Callable[[], tuple[ChannelSet, BeamformingVector]],
) -> SelectionOutcome:
    """Like :func:`select_pattern`, but only realizes the channel when a
    search is actually needed. Matched selections never touch the link."""
    if len(db) != len(cb):
        raise ValueError(f"database size {len(db)} does not match codebook size {len(cb)}")
    matched_id, candidates = try_match(db, rx_direction, threshold)
    if matched_id is not None:
        return _record_match(matched_id, candidates)
    channels, beamformer = link_factory()
    return _record_search(db, channels, beamformer, cb, candidates, rx_direction)


def _record_match(matched_id, candidates) -> SelectionOutcome:
    return SelectionOutcome(
        chosen_id=matched_id,
        matched=True,
        num_examined=candidates.size,
        candidate_ids=candidates,
        candidate_powers=np.empty(0),
    )


def _record_search(db, channels, beamformer, cb, candidates, rx_direction) -> SelectionOutcome:
    winner, powers = search_best(channels, beamformer, cb, candidates)
    db.store(winner, rx_direction)
    return SelectionOutcome(
        chosen_id=winner,
        matched=False,
        num_examined=candidates.size,
        candidate_ids=candidates,
        candidate_powers=powers,
    )


def selection_overhead(outcome: SelectionOutcome) -> int:
    """Training slots charged for this selection.

    A match costs a single configure-and-confirm slot; a search costs one
    pilot slot per examined codeword.
    """
    return 1 if outcome.matched else outcome.num_examined


def selection_complexity(
    outcome: SelectionOutcome, num_elements: int, codebook_size: int
) -> ComplexityCount:
    """Operation counts behind one selection.

    The worst-case scan over the database costs 3*Q bookkeeping operations.
    Configuring the surface costs N per applied codeword: once on a match,
    once per examined candidate on a search.
    """
    scan_ops = 3 * codebook_size
    if outcome.matched:
        return ComplexityCount(scan_ops=scan_ops, config_ops=num_elements)
    if outcome.num_examined == 0:
        raise ValueError("a search outcome must have examined at least one candidate")
    return ComplexityCount(scan_ops=scan_ops, config_ops=outcome.num_examined * num_elements)
