"""
Distributions of the effective channel gain Z = eta * G / (1 + d^alpha).

G ~ Gamma(K, 1) and d is the distance of an area-uniform point in the disk,
so the unsorted CDF is a disk average of the Gamma(K, 1) CDF. The sorted
CDF of the k-th weakest of M users follows from order statistics.
"""

import logging
import math
from functools import lru_cache

import numpy as np

from noma_outage.config import Config
from noma_outage.models import SystemConfig
from noma_outage.numerics import (
    ChebyshevRule,
    LaguerreRule,
    adaptive_integrate,
    chebyshev_rule,
    gamma_cdf_unit,
    laguerre_rule,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _cached_chebyshev(U: int, R_D: float, alpha: float) -> ChebyshevRule:
    rule = chebyshev_rule(U, R_D, alpha)
    if abs(rule.disk_bias) > 1e-3:
        logger.info(f"Chebyshev rule U={U} integrates 1 to {1 + rule.disk_bias:.6f}")
    return rule


@lru_cache(maxsize=16)
def _cached_laguerre(L: int) -> LaguerreRule:
    return laguerre_rule(L)


def rules_for(config: SystemConfig):
    """(ChebyshevRule, LaguerreRule) for a configuration; cached per parameters"""
    return (
        _cached_chebyshev(config.U, config.R_D, config.alpha),
        _cached_laguerre(config.L),
    )


def unsorted_cdf(z, config: SystemConfig, rule: ChebyshevRule = None):
    """Quadrature CDF of one user's effective gain, clamped to [0, 1]"""
    if rule is None:
        rule, _ = rules_for(config)

    z = np.asarray(z, dtype=float)
    x = z[..., np.newaxis] * rule.c / config.eta
    value = gamma_cdf_unit(x, config.K) @ rule.b
    return np.clip(value, 0.0, 1.0)


def unsorted_cdf_exact(z: float, config: SystemConfig,
                       tol: float = Config.INTEGRATION_TOLERANCE) -> float:
    """Disk integral of the unsorted CDF by adaptive integration"""
    if z < 0:
        raise ValueError(f"gain must be non-negative, got {z}")

    def integrand(r):
        y = z * (1.0 + r ** config.alpha) / config.eta
        return float(gamma_cdf_unit(y, config.K)) * r

    return 2.0 / config.R_D ** 2 * adaptive_integrate(integrand, 0.0, config.R_D, tol)


def order_statistic_cdf(F, k_order: int, M: int):
    """
    CDF of the k-th smallest of M i.i.d. draws, given their common CDF F.

    phi_k sum_p C(M-k, p) (-1)^p / (k+p) F^{k+p}, summed in descending
    magnitude with Neumaier compensation.
    """
    if not 1 <= k_order <= M:
        raise ValueError(f"order index must lie in [1, {M}], got {k_order}")

    F = np.asarray(F, dtype=float)
    phi = math.factorial(M) / (math.factorial(M - k_order) * math.factorial(k_order - 1))
    terms = np.stack([
        phi * math.comb(M - k_order, p) * (-1.0) ** p / (k_order + p) * F ** (k_order + p)
        for p in range(M - k_order + 1)
    ])

    order = np.argsort(-np.abs(terms), axis=0, kind='stable')
    terms = np.take_along_axis(terms, order, axis=0)

    total = np.zeros_like(F)
    compensation = np.zeros_like(F)
    for term in terms:
        t = total + term
        compensation += np.where(np.abs(total) >= np.abs(term),
                                 (total - t) + term,
                                 (term - t) + total)
        total = t
    return np.clip(total + compensation, 0.0, 1.0)


def sorted_cdf(z, k_order: int, config: SystemConfig, rule: ChebyshevRule = None):
    """CDF of the k-th weakest effective gain among the M users"""
    return order_statistic_cdf(unsorted_cdf(z, config, rule), k_order, config.M)
