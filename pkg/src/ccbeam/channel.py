"""Rayleigh-fading channel generation with deterministic per-realization streams.

Each Monte-Carlo realization draws four i.i.d. CN(0, 1) vectors: the two
placement-phase channels and the two delivery-phase channels (block fading,
independent across phases). The RNG stream for realization ``i`` is derived
solely from ``(master_seed, i)``, so results are reproducible regardless of
evaluation order or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DimensionError

# Stream tags keep the channel draws and any auxiliary per-realization
# randomness (e.g. the beam optimizer) on disjoint substreams.
CHANNEL_STREAM = 0
OPTIMIZER_STREAM = 1


def substream(master_seed: int, realization_id: int, stream: int = CHANNEL_STREAM) -> np.random.Generator:
    """Independent generator keyed by (master_seed, realization_id, stream)."""
    if realization_id < 0:
        raise ConfigurationError("realization_id must be nonnegative")
    seq = np.random.SeedSequence([master_seed % 2**64, realization_id, stream])
    return np.random.default_rng(seq)


@dataclass(frozen=True)
class ChannelSet:
    """The four complex channel vectors of one Monte-Carlo realization."""

    h1_pp: np.ndarray
    h2_pp: np.ndarray
    h1_dp: np.ndarray
    h2_dp: np.ndarray
    realization_id: int


def generate_channel_set(antennas: int, master_seed: int, realization_id: int) -> ChannelSet:
    """Draw one realization of all four channels.

    Entries are circularly-symmetric complex Gaussian with unit mean power
    (real and imaginary parts each of variance 1/2). Bit-identical for
    identical arguments.
    """
    if antennas < 1:
        raise ConfigurationError("antennas must be >= 1")
    rng = substream(master_seed, realization_id, CHANNEL_STREAM)
    draws = (rng.standard_normal((4, antennas)) + 1j * rng.standard_normal((4, antennas)))
    draws *= np.sqrt(0.5)
    return ChannelSet(
        h1_pp=draws[0],
        h2_pp=draws[1],
        h1_dp=draws[2],
        h2_dp=draws[3],
        realization_id=realization_id,
    )


def inner_product(a, b) -> complex:
    """Plain bilinear product sum_k a_k * b_k (no conjugation)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return complex(np.sum(a * b))
