"""Per-realization link budgets and success indicators for the decoding methods.

All rates are in nats per channel use (natural log). The placement phase (PP)
delivers one sub-file per node through a dedicated beam; the delivery phase
(DP) broadcasts a superposition Y = beta*A2 + sqrt(1-beta^2)*B1 on a shared
beam, so node 1 sees its desired sub-file with power weight beta^2 and node 2
with 1-beta^2. Success of a node is an information-theoretic threshold test,
evaluated per Monte-Carlo draw:

* JointSic      - MRC-aided interference decoding, then SIC, then joint
                  (PP+DP averaged) decoding of the interference-free stream.
* JointNoSic    - joint PP+DP decoding treating interference as noise.
* SeparateSic   - PP and DP decoded separately, SIC in the DP.
* SeparateNoSic - PP and DP decoded separately, interference as noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import ChannelSet
from .codebook import Codebook
from .errors import DimensionError


class DecodingMethod(Enum):
    JOINT_SIC = "JointSic"
    JOINT_NO_SIC = "JointNoSic"
    SEPARATE_SIC = "SeparateSic"
    SEPARATE_NO_SIC = "SeparateNoSic"


@dataclass
class BeamSolution:
    """Selected codebook indices plus the DP power split for one realization."""

    v1: int
    v2: int
    v12: int
    beta: float | None = None


@dataclass(frozen=True)
class LinkBudget:
    """Noise-normalized linear power gains (transmit power already folded in)."""

    g1_pp: float
    g2_pp: float
    g1_dp: float
    g2_dp: float


@dataclass(frozen=True)
class SuccessBreakdown:
    """Success indicators and intermediate rate terms for one realization."""

    node1_success: bool
    node2_success: bool
    mu1: bool
    mu2: bool
    pp_rate_1: float
    pp_rate_2: float
    dp_rate_des_1: float
    dp_rate_des_2: float


def rate_threshold(rate: float) -> float:
    """SNR threshold e^rate - 1 for a rate in npcu."""
    if rate <= 0:
        raise ValueError("rate must be positive")
    return float(np.expm1(rate))


def link_budget(channels: ChannelSet, solution: BeamSolution, codebook: Codebook,
                power: float, beamforming: bool = True) -> LinkBudget:
    """Linear gains seen by both nodes in both phases.

    With beamforming, g = P * |h . v|^2 for the selected beams; in
    single-antenna mode the beams drop out and g = P * |h|^2.
    """
    if power < 0:
        raise ValueError("power must be nonnegative")
    if beamforming:
        if channels.h1_pp.shape[0] != codebook.antennas:
            raise DimensionError(
                f"channel length {channels.h1_pp.shape[0]} != codebook antennas {codebook.antennas}"
            )
        b = codebook.beams
        g1_pp = power * abs(np.sum(channels.h1_pp * b[solution.v1])) ** 2
        g2_pp = power * abs(np.sum(channels.h2_pp * b[solution.v2])) ** 2
        g1_dp = power * abs(np.sum(channels.h1_dp * b[solution.v12])) ** 2
        g2_dp = power * abs(np.sum(channels.h2_dp * b[solution.v12])) ** 2
    else:
        g1_pp = power * float(np.sum(np.abs(channels.h1_pp) ** 2))
        g2_pp = power * float(np.sum(np.abs(channels.h2_pp) ** 2))
        g1_dp = power * float(np.sum(np.abs(channels.h1_dp) ** 2))
        g2_dp = power * float(np.sum(np.abs(channels.h2_dp) ** 2))
    return LinkBudget(g1_pp=float(g1_pp), g2_pp=float(g2_pp), g1_dp=float(g1_dp), g2_dp=float(g2_dp))


def _desired_sinr(g_dp, a):
    b = 1.0 - a
    return a * g_dp / (1.0 + b * g_dp)


def _mu(g_pp, g_dp, a, rate):
    """Indicator that the interfering sub-file is decodable via MRC.

    The PP slot already carried the interfering sub-file interference-free,
    so its SNR g_pp combines with the DP interference SINR. Vacuously true
    when the interference weight 1-a is zero.
    """
    b = 1.0 - a
    sinr_int = b * g_dp / (1.0 + a * g_dp)
    return (b == 0) | (np.log1p(g_pp + sinr_int) >= rate)


def node_success(g_pp, g_dp, a, rate, method: DecodingMethod):
    """Success indicator of one node; accepts scalars or numpy arrays.

    ``a`` is the node's desired-signal power weight in the DP superposition
    (beta^2 for node 1, 1-beta^2 for node 2).
    """
    r_pp = np.log1p(g_pp)
    if method is DecodingMethod.JOINT_SIC:
        return _mu(g_pp, g_dp, a, rate) & (0.5 * (r_pp + np.log1p(a * g_dp)) >= rate)
    if method is DecodingMethod.JOINT_NO_SIC:
        return 0.5 * (r_pp + np.log1p(_desired_sinr(g_dp, a))) >= rate
    if method is DecodingMethod.SEPARATE_SIC:
        return (r_pp >= rate) & _mu(g_pp, g_dp, a, rate) & (np.log1p(a * g_dp) >= rate)
    if method is DecodingMethod.SEPARATE_NO_SIC:
        return (r_pp >= rate) & (np.log1p(_desired_sinr(g_dp, a)) >= rate)
    raise ValueError(f"unknown method {method!r}")


def pair_success(g1_pp, g2_pp, g1_dp, g2_dp, beta: float, rate: float, method: DecodingMethod):
    """Vectorized success indicators (node1, node2) for arrays of gains."""
    a1 = beta * beta
    a2 = 1.0 - a1
    return (node_success(g1_pp, g1_dp, a1, rate, method),
            node_success(g2_pp, g2_dp, a2, rate, method))


def evaluate_success(budget: LinkBudget, beta: float, rate: float,
                     method: DecodingMethod) -> SuccessBreakdown:
    """Evaluate one realization's success indicators for a decoding method."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    if rate <= 0:
        raise ValueError("rate must be positive")
    a1 = beta * beta
    a2 = 1.0 - a1
    ok1 = bool(node_success(budget.g1_pp, budget.g1_dp, a1, rate, method))
    ok2 = bool(node_success(budget.g2_pp, budget.g2_dp, a2, rate, method))
    return SuccessBreakdown(
        node1_success=ok1,
        node2_success=ok2,
        mu1=bool(_mu(budget.g1_pp, budget.g1_dp, a1, rate)),
        mu2=bool(_mu(budget.g2_pp, budget.g2_dp, a2, rate)),
        pp_rate_1=float(np.log1p(budget.g1_pp)),
        pp_rate_2=float(np.log1p(budget.g2_pp)),
        dp_rate_des_1=float(np.log1p(_desired_sinr(budget.g1_dp, a1))),
        dp_rate_des_2=float(np.log1p(_desired_sinr(budget.g2_dp, a2))),
    )


def evaluate_uncoded(budget_pp: LinkBudget, dp_gain_1: float, dp_gain_2: float,
                     rate: float) -> tuple[bool, bool]:
    """Uncoded baseline: each node gets an interference-free dedicated DP slot.

    A node succeeds when the mutual information accumulated over its two
    equal-duration slots covers the target rate.
    """
    if rate <= 0:
        raise ValueError("rate must be positive")
    ok1 = 0.5 * (np.log1p(budget_pp.g1_pp) + np.log1p(dp_gain_1)) >= rate
    ok2 = 0.5 * (np.log1p(budget_pp.g2_pp) + np.log1p(dp_gain_2)) >= rate
    return bool(ok1), bool(ok2)


def uncoded_success(g1_pp, g2_pp, dp_gain_1, dp_gain_2, rate):
    """Vectorized uncoded-baseline indicators for both nodes."""
    ok1 = 0.5 * (np.log1p(g1_pp) + np.log1p(dp_gain_1)) >= rate
    ok2 = 0.5 * (np.log1p(g2_pp) + np.log1p(dp_gain_2)) >= rate
    return ok1, ok2
