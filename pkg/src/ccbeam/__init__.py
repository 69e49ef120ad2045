"""Monte-Carlo simulator for beamformed coded-caching over Rayleigh fading."""

from .channel import ChannelSet, generate_channel_set, inner_product
from .codebook import Codebook, beam_gain, build_dft_codebook, neighbors
from .errors import ConfigurationError, DimensionError
from .gaopt import GaParams, exhaustive_optimize, ga_optimize
from .linkmodel import (BeamSolution, DecodingMethod, LinkBudget,
                        SuccessBreakdown, evaluate_success, evaluate_uncoded,
                        link_budget, rate_threshold)
from .orchestrator import (Scheme, SimConfig, SweepRow, convergence_trace,
                           desk_scale, estimate_point, optimize_beta,
                           select_beams, sweep)

__version__ = "0.1.0"

__all__ = [
    "ChannelSet", "generate_channel_set", "inner_product",
    "Codebook", "build_dft_codebook", "neighbors", "beam_gain",
    "ConfigurationError", "DimensionError",
    "GaParams", "ga_optimize", "exhaustive_optimize",
    "BeamSolution", "DecodingMethod", "LinkBudget", "SuccessBreakdown",
    "link_budget", "evaluate_success", "evaluate_uncoded", "rate_threshold",
    "Scheme", "SimConfig", "SweepRow", "select_beams", "optimize_beta",
    "estimate_point", "sweep", "convergence_trace", "desk_scale",
]
