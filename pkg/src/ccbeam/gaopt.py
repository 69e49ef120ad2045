"""Genetic-algorithm optimizer over tuples of codebook indices.

Each iteration evaluates the retained best genome (the Queen), J mutants
obtained by replacing every index with a random circular neighbor, and
S - J - 1 fresh uniformly random genomes. The Queen is only replaced on a
strict improvement, so the best-so-far trace is non-decreasing.

An exhaustive enumerator is provided as the validation oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError

Genome = tuple[int, ...]

EXHAUSTIVE_GUARD = 10**6


@dataclass(frozen=True)
class GaParams:
    population_size: int = 8
    elite_children: int = 3
    neighbor_radius: int = 1
    iterations: int = 150

    def __post_init__(self):
        if self.population_size < 1:
            raise ConfigurationError("population_size must be >= 1")
        if not 0 < self.elite_children < self.population_size:
            raise ConfigurationError("elite_children must satisfy 0 < J < S")
        if self.population_size - self.elite_children - 1 < 0:
            raise ConfigurationError("population requires S - J - 1 >= 0")
        if self.neighbor_radius < 1:
            raise ConfigurationError("neighbor_radius must be >= 1")
        if self.iterations < 1:
            raise ConfigurationError("iterations must be >= 1")


def _random_genomes(rng: np.random.Generator, count: int, length: int, size: int) -> list[Genome]:
    draws = rng.integers(0, size, size=(count, length))
    return [tuple(int(i) for i in row) for row in draws]


def _mutate(rng: np.random.Generator, genome: Genome, radius: int, size: int) -> Genome:
    # every index independently replaced by a uniform circular neighbor
    offsets = rng.integers(1, radius + 1, size=len(genome))
    signs = rng.integers(0, 2, size=len(genome)) * 2 - 1
    return tuple((g + int(s) * int(d)) % size for g, s, d in zip(genome, signs, offsets))


def ga_optimize(objective: Callable[[Genome], float], genome_length: int,
                codebook_size: int, params: GaParams,
                rng: np.random.Generator) -> tuple[Genome, float, list[float]]:
    """Maximize ``objective`` over index tuples; returns (queen, value, trace).

    ``trace`` holds the best-so-far objective after each iteration and is
    non-decreasing by construction.
    """
    if genome_length < 1 or codebook_size < 1:
        raise ConfigurationError("genome_length and codebook_size must be >= 1")
    if params.neighbor_radius >= codebook_size / 2:
        raise ConfigurationError("neighbor_radius must be < codebook_size / 2")

    population = _random_genomes(rng, params.population_size, genome_length, codebook_size)
    queen: Genome | None = None
    queen_value = -np.inf
    trace: list[float] = []
    n_random = params.population_size - params.elite_children - 1

    for _ in range(params.iterations):
        for genome in population:
            value = float(objective(genome))
            if value > queen_value:  # ties keep the incumbent
                queen, queen_value = genome, value
        trace.append(queen_value)
        population = [queen]
        population += [_mutate(rng, queen, params.neighbor_radius, codebook_size)
                       for _ in range(params.elite_children)]
        population += _random_genomes(rng, n_random, genome_length, codebook_size)

    return queen, queen_value, trace


def exhaustive_optimize(objective: Callable[[Genome], float], genome_length: int,
                        codebook_size: int) -> tuple[Genome, float]:
    """Global maximizer by full enumeration; ties go to the smallest tuple."""
    if genome_length < 1 or codebook_size < 1:
        raise ConfigurationError("genome_length and codebook_size must be >= 1")
    if codebook_size ** genome_length > EXHAUSTIVE_GUARD:
        raise ConfigurationError(
            f"search space {codebook_size}^{genome_length} exceeds guard {EXHAUSTIVE_GUARD}"
        )
    best: Genome | None = None
    best_value = -np.inf
    for genome in itertools.product(range(codebook_size), repeat=genome_length):
        value = float(objective(genome))
        if value > best_value:
            best, best_value = genome, value
    return best, best_value
