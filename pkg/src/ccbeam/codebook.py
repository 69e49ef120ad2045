"""DFT beam codebook, circular neighbor relation, and beamforming gain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import inner_product
from .errors import ConfigurationError, DimensionError


@dataclass(frozen=True)
class Codebook:
    """Ordered set of unit-norm DFT beams.

    ``beams`` has shape (size, antennas); row q, entry n is
    exp(i 2*pi n q / Q) / sqrt(antennas).
    """

    beams: np.ndarray
    antennas: int
    oversampling: int

    @property
    def size(self) -> int:
        return self.beams.shape[0]


def build_dft_codebook(antennas: int, oversampling: int = 2, num_beams: int | None = None) -> Codebook:
    """Build the oversampled DFT codebook with Q = antennas * oversampling beams.

    ``num_beams`` overrides Q directly (used for reduced desk-scale runs);
    every beam stays unit-norm either way.
    """
    if antennas < 1 or oversampling < 1:
        raise ConfigurationError("antennas and oversampling must be >= 1")
    q_count = antennas * oversampling if num_beams is None else num_beams
    if q_count < 1:
        raise ConfigurationError("num_beams must be >= 1")
    q = np.arange(q_count)
    n = np.arange(antennas)
    beams = np.exp(2j * np.pi * np.outer(q, n) / q_count) / np.sqrt(antennas)
    return Codebook(beams=beams, antennas=antennas, oversampling=oversampling)


def neighbors(index: int, radius: int, codebook_size: int) -> set[int]:
    """Indices within ``radius`` of ``index`` on the circular codebook."""
    if radius < 1 or radius >= codebook_size / 2:
        raise ConfigurationError(
            f"radius must satisfy 1 <= radius < codebook_size/2 (got radius={radius}, size={codebook_size})"
        )
    if not 0 <= index < codebook_size:
        raise ConfigurationError(f"index {index} out of range [0, {codebook_size})")
    out = set()
    for d in range(1, radius + 1):
        out.add((index + d) % codebook_size)
        out.add((index - d) % codebook_size)
    return out


def beam_gain(h, v, power: float) -> float:
    """Received power gain P * |h . v|^2 against unit noise."""
    if power < 0:
        raise ValueError("power must be nonnegative")
    prod = inner_product(h, v)  # raises DimensionError on mismatch
    return power * abs(prod) ** 2


__all__ = ["Codebook", "build_dft_codebook", "neighbors", "beam_gain", "DimensionError"]
