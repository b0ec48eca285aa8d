"""
High-SNR behaviour: asymptotic outage expressions and the diversity order
estimated from a curve's slope.
"""

import logging
import math
from typing import Optional

import numpy as np

from noma_outage.config import Config
from noma_outage.link import derive_thresholds
from noma_outage.models import SicMode, SystemConfig
from noma_outage.analytic.curves import AsymptoteResult, OutageCurve
from noma_outage.analytic.distributions import rules_for
from noma_outage.analytic.outage import residual_interference_average

logger = logging.getLogger(__name__)


def _leading_term(threshold: float, order: int, config: SystemConfig) -> float:
    # C(M, k) [sum_u b_u / K! (x c_u / eta)^K]^k, first term of the small-x expansion
    rule, _ = rules_for(config)
    K = config.K
    inner = float(np.sum(rule.b / math.factorial(K) * (threshold * rule.c / config.eta) ** K))
    return math.comb(config.M, order) * inner ** order


def asymptotic_outage_m(config: SystemConfig, rho: float) -> AsymptoteResult:
    thresholds = derive_thresholds(config, rho)
    if not thresholds.feasible_m:
        raise ValueError(
            f"asymptote undefined for an infeasible split (a_m={config.a_m}, eps_m={thresholds.eps_m:.4g})"
        )

    return AsymptoteResult(
        value=_leading_term(thresholds.tau, config.m_index, config),
        diversity=config.m_index * config.K,
    )


def asymptotic_outage_n(config: SystemConfig, rho: float) -> AsymptoteResult:
    """
    Imperfect SIC: the SNR-independent error floor (beta dropped).
    Perfect SIC: leading term in beta with diversity n*K.
    """
    thresholds = derive_thresholds(config, rho)

    if config.sic_mode is SicMode.IMPERFECT and config.omega_I > 0:
        crule, lrule = rules_for(config)
        floor = residual_interference_average(config, 0.0, thresholds.theta_coeff, crule, lrule)
        return AsymptoteResult(value=floor, diversity=0, floor=True)

    return AsymptoteResult(
        value=_leading_term(max(thresholds.tau or 0.0, thresholds.beta), config.n_index, config),
        diversity=config.n_index * config.K,
    )


def diversity_order_estimate(curve: OutageCurve,
                             window_db: float = Config.DIVERSITY_WINDOW_DB,
                             min_probability: float = Config.DIVERSITY_MIN_PROBABILITY
                             ) -> Optional[float]:
    """
    Negated least-squares slope of log10 P against log10 rho over the top
    ``window_db`` of the grid. Returns None (indeterminate) when fewer than
    two usable points remain.
    """
    snr_db = curve.snr_grid_db
    values = curve.values
    usable = (values > min_probability) & (snr_db >= snr_db.max() - window_db)

    if np.count_nonzero(usable) < 2:
        logger.info(f"{curve.label}: diversity order indeterminate "
                    f"({np.count_nonzero(usable)} usable points)")
        return None

    slope, _ = np.polyfit(snr_db[usable] / 10.0, np.log10(values[usable]), 1)
    return float(-slope)
