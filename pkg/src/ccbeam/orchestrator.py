"""Monte-Carlo estimation of STP and throughput across transmit powers.

Beam selections depend only on the channel realization (never on transmit
power or the power split), so each realization's beams are chosen once and
the resulting unit-power gains are reused for every swept power, scheme, and
decoding method. All schemes at a given power therefore share the same
channel draws (common random numbers), which makes the dominance relations
between methods hold pointwise rather than only in expectation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .channel import OPTIMIZER_STREAM, generate_channel_set, substream
from .codebook import Codebook, build_dft_codebook
from .errors import ConfigurationError
from .gaopt import GaParams, exhaustive_optimize, ga_optimize
from .linkmodel import (BeamSolution, DecodingMethod, LinkBudget, link_budget,
                        pair_success, uncoded_success)


class Scheme(Enum):
    CODED_BF = "CodedBf"
    CODED_NO_BF = "CodedNoBf"
    UNCODED_BF = "UncodedBf"
    UNCODED_NO_BF = "UncodedNoBf"

    @property
    def beamformed(self) -> bool:
        return self in (Scheme.CODED_BF, Scheme.UNCODED_BF)

    @property
    def coded(self) -> bool:
        return self in (Scheme.CODED_BF, Scheme.CODED_NO_BF)


ALL_METHODS = (DecodingMethod.JOINT_SIC, DecodingMethod.JOINT_NO_SIC,
               DecodingMethod.SEPARATE_SIC, DecodingMethod.SEPARATE_NO_SIC)
ALL_SCHEMES = (Scheme.CODED_BF, Scheme.CODED_NO_BF,
               Scheme.UNCODED_BF, Scheme.UNCODED_NO_BF)

DEFAULT_POWERS_DB = tuple(float(p) for p in range(0, 61, 5))


@dataclass
class SimConfig:
    """Simulation configuration; the defaults reproduce the full-scale setup
    (32 antennas, 15000 realizations, 150 GA iterations, 2 npcu)."""

    antennas: int = 32
    realizations: int = 15000
    rate_npcu: float = 2.0
    oversampling: int = 2
    codebook_size: int | None = None  # overrides antennas * oversampling
    ga: GaParams = field(default_factory=GaParams)
    beta_grid_step: float = 0.01
    powers_db: tuple[float, ...] = DEFAULT_POWERS_DB
    schemes: tuple[Scheme, ...] = ALL_SCHEMES
    methods: tuple[DecodingMethod, ...] = ALL_METHODS
    master_seed: int = 0
    use_ga: bool = True
    noise_variance: float = 1.0  # fixed; success tests are threshold-based

    def __post_init__(self):
        if self.antennas < 1:
            raise ConfigurationError("antennas must be >= 1")
        if self.realizations < 1:
            raise ConfigurationError("realizations must be >= 1")
        if self.rate_npcu <= 0:
            raise ConfigurationError("rate_npcu must be positive")
        if self.oversampling < 1:
            raise ConfigurationError("oversampling must be >= 1")
        if self.codebook_size is not None and self.codebook_size < 1:
            raise ConfigurationError("codebook_size must be >= 1")
        if not 0 < self.beta_grid_step < 1:
            raise ConfigurationError("beta_grid_step must lie in (0, 1)")
        if len(self.powers_db) == 0:
            raise ConfigurationError("powers_db must be nonempty")
        if not self.schemes:
            raise ConfigurationError("schemes must be nonempty")
        if not self.methods:
            raise ConfigurationError("methods must be nonempty")
        if self.noise_variance != 1.0:
            raise ConfigurationError("noise_variance is fixed at 1")
        self.powers_db = tuple(sorted(float(p) for p in self.powers_db))

    def build_codebook(self) -> Codebook:
        return build_dft_codebook(self.antennas, self.oversampling, self.codebook_size)


@dataclass(frozen=True)
class SweepRow:
    """One aggregated (power, scheme, method) Monte-Carlo estimate."""

    power_db: float
    scheme: Scheme
    method: DecodingMethod | None
    beta_star: float | None
    stp: float
    throughput_npcu: float
    realizations: int
    master_seed: int


@dataclass(frozen=True)
class GainTables:
    """Unit-power gains per realization; multiply by linear power to use."""

    g1_pp: np.ndarray
    g2_pp: np.ndarray
    g1_dp: np.ndarray  # shared DP beam (coded scheme)
    g2_dp: np.ndarray
    g1_dp_dedicated: np.ndarray  # per-node best DP beam (uncoded scheme)
    g2_dp_dedicated: np.ndarray


def select_beams(channels, codebook: Codebook, ga: GaParams,
                 rng: np.random.Generator, use_ga: bool = True) -> BeamSolution:
    """Choose the two PP beams and the shared DP beam for one realization.

    PP beams are single-beam interference-free slots, so a direct codebook
    scan of |h.v|^2 is exact. The shared DP beam maximizes the minimum of the
    two nodes' gains, via the GA or the exhaustive oracle.
    """
    b = codebook.beams
    v1 = int(np.argmax(np.abs(b @ channels.h1_pp) ** 2))
    v2 = int(np.argmax(np.abs(b @ channels.h2_pp) ** 2))
    table = np.minimum(np.abs(b @ channels.h1_dp) ** 2, np.abs(b @ channels.h2_dp) ** 2)

    def objective(genome):
        return float(table[genome[0]])

    # degenerate codebooks leave no room for neighbor mutation
    if use_ga and codebook.size <= 2 * ga.neighbor_radius:
        use_ga = False
    if use_ga:
        genome, _, _ = ga_optimize(objective, 1, codebook.size, ga, rng)
    else:
        genome, _ = exhaustive_optimize(objective, 1, codebook.size)
    return BeamSolution(v1=v1, v2=v2, v12=genome[0])


def _gain_chunk(antennas, oversampling, codebook_size, master_seed, ga, use_ga,
                beamforming, start, stop):
    """Gains for realizations [start, stop); picklable for process pools."""
    n = stop - start
    cols = np.empty((6, n))
    if beamforming:
        codebook = build_dft_codebook(antennas, oversampling, codebook_size)
        for k, rid in enumerate(range(start, stop)):
            cs = generate_channel_set(antennas, master_seed, rid)
            rng = substream(master_seed, rid, OPTIMIZER_STREAM)
            sol = select_beams(cs, codebook, ga, rng, use_ga)
            budget = link_budget(cs, sol, codebook, power=1.0, beamforming=True)
            ded1 = float(np.max(np.abs(codebook.beams @ cs.h1_dp) ** 2))
            ded2 = float(np.max(np.abs(codebook.beams @ cs.h2_dp) ** 2))
            cols[:, k] = (budget.g1_pp, budget.g2_pp, budget.g1_dp, budget.g2_dp, ded1, ded2)
    else:
        for k, rid in enumerate(range(start, stop)):
            cs = generate_channel_set(1, master_seed, rid)
            sol = BeamSolution(v1=0, v2=0, v12=0)
            budget = link_budget(cs, sol, None, power=1.0, beamforming=False)
            cols[:, k] = (budget.g1_pp, budget.g2_pp, budget.g1_dp, budget.g2_dp,
                          budget.g1_dp, budget.g2_dp)
    return cols


def compute_gain_tables(config: SimConfig, beamforming: bool, workers: int = 1) -> GainTables:
    """Per-realization unit-power gains, identical for any worker count."""
    n = config.realizations
    args = (config.antennas, config.oversampling, config.codebook_size,
            config.master_seed, config.ga, config.use_ga, beamforming)
    if workers <= 1 or n < 2 * workers:
        cols = _gain_chunk(*args, 0, n)
    else:
        bounds = np.linspace(0, n, workers + 1).astype(int)
        chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_worker, [args + c for c in chunks]))
        cols = np.concatenate(parts, axis=1)
    return GainTables(g1_pp=cols[0], g2_pp=cols[1], g1_dp=cols[2], g2_dp=cols[3],
                      g1_dp_dedicated=cols[4], g2_dp_dedicated=cols[5])


def _chunk_worker(packed):
    return _gain_chunk(*packed)


def beta_grid(step: float) -> np.ndarray:
    """The scan grid {0, step, 2*step, ..., 1} (1 always included)."""
    count = int(round(1.0 / step))
    grid = np.arange(count + 1) * step
    grid = grid[grid <= 1.0 + 1e-12]
    grid[-1] = min(grid[-1], 1.0)
    if grid[-1] < 1.0 - 1e-12:
        grid = np.append(grid, 1.0)
    return grid


def _optimize_beta_arrays(g1_pp, g2_pp, g1_dp, g2_dp, rate, method, grid_step):
    best_beta, best_stp, best_p = 0.0, -1.0, (0.0, 0.0)
    for beta in beta_grid(grid_step):
        ok1, ok2 = pair_success(g1_pp, g2_pp, g1_dp, g2_dp, float(beta), rate, method)
        p1 = float(np.mean(ok1))
        p2 = float(np.mean(ok2))
        stp = 0.5 * (p1 + p2)
        if stp > best_stp:  # ties keep the smallest beta
            best_beta, best_stp, best_p = float(beta), stp, (p1, p2)
    return best_beta, best_stp, best_p


def optimize_beta(budgets: list[LinkBudget], rate: float, method: DecodingMethod,
                  grid_step: float) -> tuple[float, float]:
    """Exhaustive grid search of the DP power split maximizing empirical STP."""
    if not budgets:
        raise ConfigurationError("budget list must be nonempty")
    if not 0 < grid_step < 1:
        raise ConfigurationError("grid_step must lie in (0, 1)")
    g1_pp = np.array([b.g1_pp for b in budgets])
    g2_pp = np.array([b.g2_pp for b in budgets])
    g1_dp = np.array([b.g1_dp for b in budgets])
    g2_dp = np.array([b.g2_dp for b in budgets])
    beta, stp, _ = _optimize_beta_arrays(g1_pp, g2_pp, g1_dp, g2_dp, rate, method, grid_step)
    return beta, stp


def _point_from_tables(config: SimConfig, tables: GainTables, power_db: float,
                       scheme: Scheme, method: DecodingMethod | None) -> SweepRow:
    power = 10.0 ** (power_db / 10.0)
    rate = config.rate_npcu
    if scheme.coded:
        if method is None:
            raise ConfigurationError("coded schemes require a decoding method")
        beta, stp, (p1, p2) = _optimize_beta_arrays(
            power * tables.g1_pp, power * tables.g2_pp,
            power * tables.g1_dp, power * tables.g2_dp,
            rate, method, config.beta_grid_step)
        throughput = rate * p1 + rate * p2
        return SweepRow(power_db=power_db, scheme=scheme, method=method,
                        beta_star=beta, stp=stp, throughput_npcu=throughput,
                        realizations=config.realizations, master_seed=config.master_seed)
    ok1, ok2 = uncoded_success(power * tables.g1_pp, power * tables.g2_pp,
                               power * tables.g1_dp_dedicated,
                               power * tables.g2_dp_dedicated, rate)
    p1 = float(np.mean(ok1))
    p2 = float(np.mean(ok2))
    return SweepRow(power_db=power_db, scheme=scheme, method=None,
                    beta_star=None, stp=0.5 * (p1 + p2),
                    throughput_npcu=0.5 * (rate * p1 + rate * p2),
                    realizations=config.realizations, master_seed=config.master_seed)


def estimate_point(config: SimConfig, power_db: float, scheme: Scheme,
                   method: DecodingMethod | None = None, workers: int = 1) -> SweepRow:
    """Single (power, scheme, method) estimate; see sweep() for batched runs."""
    if scheme.coded and method is None:
        raise ConfigurationError("coded schemes require a decoding method")
    if not scheme.coded and method is not None:
        method = None  # uncoded rows carry no method
    tables = compute_gain_tables(config, scheme.beamformed, workers)
    return _point_from_tables(config, tables, power_db, scheme, method)


def sweep(config: SimConfig, workers: int = 1) -> list[SweepRow]:
    """One SweepRow per (power, scheme, method) combination.

    Channel realizations and beam selections are shared across all powers,
    schemes at the same antenna mode, and methods (common random numbers);
    the output is deterministic under master_seed for any worker count.
    """
    tables: dict[bool, GainTables] = {}
    for mode in {s.beamformed for s in config.schemes}:
        tables[mode] = compute_gain_tables(config, mode, workers)
    rows = []
    for power_db in config.powers_db:
        for scheme in config.schemes:
            if scheme.coded:
                for method in config.methods:
                    rows.append(_point_from_tables(config, tables[scheme.beamformed],
                                                   power_db, scheme, method))
            else:
                rows.append(_point_from_tables(config, tables[scheme.beamformed],
                                               power_db, scheme, None))
    return rows


def convergence_trace(config: SimConfig, power_db: float,
                      n_examples: int) -> list[list[float]]:
    """GA convergence traces of the DP beam, as min-SINR in dB at equal split.

    One trace per realization; each entry is the best-so-far objective after
    an iteration, mapped through SINR = 0.5 g / (1 + 0.5 g) with g the raw
    min-gain at the given power. Non-decreasing by elitism.
    """
    if n_examples < 1:
        raise ConfigurationError("n_examples must be >= 1")
    codebook = config.build_codebook()
    power = 10.0 ** (power_db / 10.0)
    traces = []
    for rid in range(n_examples):
        cs = generate_channel_set(config.antennas, config.master_seed, rid)
        table = np.minimum(np.abs(codebook.beams @ cs.h1_dp) ** 2,
                           np.abs(codebook.beams @ cs.h2_dp) ** 2)
        rng = substream(config.master_seed, rid, OPTIMIZER_STREAM)
        _, _, trace = ga_optimize(lambda g: float(table[g[0]]), 1, codebook.size,
                                  config.ga, rng)
        g = power * np.asarray(trace)
        sinr = 0.5 * g / (1.0 + 0.5 * g)
        traces.append([float(x) for x in 10.0 * np.log10(sinr)])
    return traces


def desk_scale(config: SimConfig | None = None) -> SimConfig:
    """Reduced settings for quick runs: 2000 realizations, 16-beam codebook."""
    base = config if config is not None else SimConfig()
    return replace(base, realizations=2000, codebook_size=16)
