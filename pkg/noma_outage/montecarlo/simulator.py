"""
Monte Carlo oracle for the outage probabilities.

Trials run in batches of Config.BATCH_SIZE. Batch b draws from a Philox
generator seeded with SeedSequence(seed, spawn_key=(b,)), so estimates
depend only on (config, seed, trials) and never on the worker count.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from noma_outage.config import Config
from noma_outage.link import derive_thresholds, sinr_m, sinr_n, sinr_n_to_m, target_threshold
from noma_outage.models import SystemConfig, ThresholdSet
from noma_outage.analytic.outage import throughput_from_outage
from noma_outage.montecarlo.channel import ChannelDraw, sample_batch

logger = logging.getLogger(__name__)

Z_95 = 1.96


@dataclass(frozen=True)
class OutageEstimate:
    """Empirical outage probability with a normal-approximation 95% interval"""

    p_hat: float
    trials: int
    ci95_halfwidth: float
    successes: int = 0

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> "OutageEstimate":
        if trials < 1:
            raise ValueError(f"trials must be >= 1, got {trials}")
        p_hat = successes / trials
        halfwidth = Z_95 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
        return cls(p_hat=p_hat, trials=trials, ci95_halfwidth=halfwidth, successes=int(successes))

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return abs(value - self.p_hat) <= self.ci95_halfwidth + slack


@dataclass(frozen=True)
class SweepEstimates:
    """Per-SNR estimates sharing one set of channel draws"""

    rhos: np.ndarray
    user_m: List[OutageEstimate]
    user_n: List[OutageEstimate]
    oma: List[OutageEstimate]


def trial_outage(draw: ChannelDraw, thresholds: ThresholdSet, config: SystemConfig):
    """
    Outage flags (user m, user n) of sorted draws, from the SINR inequalities.

    User n is in outage when it cannot decode x_m, or decodes x_m but then
    fails on its own symbol.
    """
    rho = thresholds.rho
    z_m = draw.Z[..., config.m_index - 1]
    z_n = draw.Z[..., config.n_index - 1]

    flag_m = sinr_m(z_m, rho, config.a_m, config.a_n) < thresholds.eps_m

    gamma_n_to_m = sinr_n_to_m(z_n, rho, config.a_m, config.a_n)
    gamma_n = sinr_n(z_n, draw.Y_I, rho, config.a_n, config.sic_mode)
    flag_n = (gamma_n_to_m <= thresholds.eps_m) | (
        (gamma_n_to_m > thresholds.eps_m) & (gamma_n <= thresholds.eps_n)
    )
    return flag_m, flag_n


def oma_outage(draw: ChannelDraw, rho: float, config: SystemConfig):
    """OMA baseline flag for the n-th user: half the channel uses at full power"""
    z_n = draw.Z[..., config.n_index - 1]
    return 0.5 * np.log2(1.0 + rho * z_n) < config.R_n


def _batch_seed(seed: int, batch_index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(batch_index,))
    return np.random.Generator(np.random.Philox(sequence))


def _simulate_batch(config: SystemConfig, rhos: np.ndarray, size: int,
                    seed: int, batch_index: int) -> np.ndarray:
    """Outage counts of one batch, shape (3, len(rhos)): user m, user n, OMA"""
    rng = _batch_seed(seed, batch_index)
    draw = sample_batch(rng, config, size)

    counts = np.zeros((3, rhos.size), dtype=np.int64)
    for j, rho in enumerate(rhos):
        thresholds = derive_thresholds(config, float(rho))
        flag_m, flag_n = trial_outage(draw, thresholds, config)
        counts[0, j] = np.count_nonzero(flag_m)
        counts[1, j] = np.count_nonzero(flag_n)
        counts[2, j] = np.count_nonzero(oma_outage(draw, float(rho), config))
    return counts


def _batch_sizes(trials: int, batch_size: int) -> List[int]:
    full, rest = divmod(trials, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def estimate_outage_sweep(config: SystemConfig, rhos: Sequence[float], trials: int,
                          seed: int, n_jobs: int = 1, progress: bool = False,
                          batch_size: int = Config.BATCH_SIZE) -> SweepEstimates:
    """Estimate user-m, user-n and OMA outage at every SNR from shared draws"""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    rhos = np.atleast_1d(np.asarray(rhos, dtype=float))
    sizes = _batch_sizes(trials, batch_size)
    logger.info(f"Monte Carlo: {trials} trials in {len(sizes)} batches, "
                f"{rhos.size} SNR points, seed={seed}")

    jobs = Parallel(n_jobs=n_jobs, return_as="generator")(
        delayed(_simulate_batch)(config, rhos, size, seed, index)
        for index, size in enumerate(sizes)
    )
    totals = np.zeros((3, rhos.size), dtype=np.int64)
    for counts in tqdm(jobs, total=len(sizes), desc="MC batches", disable=not progress):
        totals += counts

    def estimates(row):
        return [OutageEstimate.from_counts(int(c), trials) for c in totals[row]]

    return SweepEstimates(rhos=rhos, user_m=estimates(0), user_n=estimates(1), oma=estimates(2))


def estimate_outage(config: SystemConfig, rho: float, trials: int, seed: int,
                    n_jobs: int = 1) -> Tuple[OutageEstimate, OutageEstimate]:
    sweep = estimate_outage_sweep(config, [rho], trials, seed, n_jobs)
    return sweep.user_m[0], sweep.user_n[0]


def estimate_oma(config: SystemConfig, rho: float, trials: int, seed: int,
                 n_jobs: int = 1) -> OutageEstimate:
    return estimate_outage_sweep(config, [rho], trials, seed, n_jobs).oma[0]


def estimate_throughput(config: SystemConfig, rho: float, trials: int, seed: int,
                        n_jobs: int = 1) -> float:
    """Delay-limited throughput evaluated on simulated outage probabilities"""
    est_m, est_n = estimate_outage(config, rho, trials, seed, n_jobs)
    return float(throughput_from_outage(config, est_m.p_hat, est_n.p_hat))


def oma_threshold(config: SystemConfig, rho: float) -> float:
    """Gain below which the OMA user n is in outage: (2^{2 R_n} - 1) / rho"""
    return target_threshold(2.0 * config.R_n) / rho
