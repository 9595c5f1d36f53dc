"""Random reflection-pattern codebooks and their complex coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ReflectionPattern:
    """One codeword: a phase shift per RIS element plus a common amplitude."""

    phases: np.ndarray
    amplitude: float = 1.0

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float)
        if phases.ndim != 1 or phases.size < 1:
            raise ValueError("phases must be a nonempty 1-D array")
        if np.any(phases < 0.0) or np.any(phases >= TWO_PI):
            raise ValueError("phases must lie in [0, 2*pi)")
        if not 0.0 <= self.amplitude <= 1.0:
            raise ValueError(f"amplitude must lie in [0, 1], got {self.amplitude}")
        object.__setattr__(self, "phases", phases)

    @property
    def num_elements(self) -> int:
        return self.phases.size


def pattern_to_coefficients(pattern: ReflectionPattern) -> np.ndarray:
    """Per-element reflection coefficients amplitude * exp(j*phase)."""
    return pattern.amplitude * np.exp(1j * pattern.phases)


class Codebook:
    """An ordered, immutable bank of reflection patterns with IDs 1..Q."""

    def __init__(self, phase_matrix: np.ndarray, amplitude: float = 1.0):
        phases = np.array(phase_matrix, dtype=float)
        if phases.ndim != 2 or phases.shape[0] < 1 or phases.shape[1] < 1:
            raise ValueError("phase matrix must be 2-D with at least one row and column")
        if np.any(phases < 0.0) or np.any(phases >= TWO_PI):
            raise ValueError("phases must lie in [0, 2*pi)")
        if not 0.0 <= amplitude <= 1.0:
            raise ValueError(f"amplitude must lie in [0, 1], got {amplitude}")
        phases.setflags(write=False)
        self._phases = phases
        self._amplitude = float(amplitude)
        self._coefficients: np.ndarray | None = None

    def __len__(self) -> int:
        return self._phases.shape[0]

    @property
    def num_elements(self) -> int:
        return self._phases.shape[1]

    @property
    def amplitude(self) -> float:
        return self._amplitude

    @property
    def phase_matrix(self) -> np.ndarray:
        return self._phases

    def pattern(self, pattern_id: int) -> ReflectionPattern:
        """Codeword by 1-based ID."""
        if not 1 <= pattern_id <= len(self):
            raise ValueError(f"pattern id {pattern_id} outside 1..{len(self)}")
        return ReflectionPattern(self._phases[pattern_id - 1].copy(), self._amplitude)

    def coefficients(self) -> np.ndarray:
        """(Q, N) complex coefficient matrix, cached after first use."""
        if self._coefficients is None:
            coeffs = self._amplitude * np.exp(1j * self._phases)
            coeffs.setflags(write=False)
            self._coefficients = coeffs
        return self._coefficients


def generate_random_codebook(
    num_elements: int,
    size: int,
    amplitude: float = 1.0,
    rng: np.random.Generator | None = None,
) -> Codebook:
    """Draw `size` codewords with i.i.d. uniform phases on [0, 2*pi)."""
    if num_elements < 1:
        raise ValueError(f"num_elements must be >= 1, got {num_elements}")
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    if rng is None:
        rng = np.random.default_rng()
    phases = rng.uniform(0.0, TWO_PI, size=(size, num_elements))
    # uniform() can hit the open endpoint through rounding; fold it back
    phases[phases >= TWO_PI] = 0.0
    return Codebook(phases, amplitude)


def save_codebook(cb: Codebook, path: str | Path) -> None:
    """Write a codebook as text: header `N Q gamma`, then one row per codeword.

    Phases are written with 17 significant digits so a load/save round trip
    is byte-exact.
    """
    lines = [f"{cb.num_elements} {len(cb)} {cb.amplitude:.17g}"]
    for row in cb.phase_matrix:
        lines.append(" ".join(f"{p:.17g}" for p in row))
    Path(path).write_text("\n".join(lines) + "\n")


def load_codebook(path: str | Path) -> Codebook:
    """Read a codebook written by :func:`save_codebook`."""
    text = Path(path).read_text()
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError(f"{path}: empty codebook file")
    header = rows[0].split()
    if len(header) != 3:
        raise ValueError(f"{path}: header must be 'N Q gamma', got {rows[0]!r}")
    num_elements, size = int(header[0]), int(header[1])
    amplitude = float(header[2])
    if len(rows) - 1 != size:
        raise ValueError(f"{path}: expected {size} codeword rows, found {len(rows) - 1}")
    phases = np.empty((size, num_elements), dtype=float)
    for i, line in enumerate(rows[1:]):
        values = line.split()
        if len(values) != num_elements:
            raise ValueError(f"{path}: row {i + 1} has {len(values)} phases, expected {num_elements}")
        phases[i] = [float(v) for v in values]
    return Codebook(phases, amplitude)
