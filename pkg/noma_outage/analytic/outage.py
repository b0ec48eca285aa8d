"""
Closed-form outage probabilities of the paired users and the delay-limited
throughput they imply.
"""

import logging
import math

import numpy as np

from noma_outage.link import derive_thresholds
from noma_outage.models import RatePairing, SicMode, SystemConfig
from noma_outage.numerics import ChebyshevRule, LaguerreRule, adaptive_integrate, gamma_cdf_unit
from noma_outage.analytic.distributions import rules_for, sorted_cdf

logger = logging.getLogger(__name__)


def outage_m(config: SystemConfig, rho: float) -> float:
    """Outage of the weak user: Pr(Z_(m) < tau), exactly 1 for an infeasible split"""
    thresholds = derive_thresholds(config, rho)
    if not thresholds.feasible_m:
        logger.warning(
            f"Infeasible power split at rho={rho:g}: a_m={config.a_m} <= eps_m * a_n "
            f"= {thresholds.eps_m * config.a_n:.4g}; both users are always in outage"
        )
        return 1.0

    rule, _ = rules_for(config)
    return float(sorted_cdf(thresholds.tau, config.m_index, config, rule))


def outage_n(config: SystemConfig, rho: float) -> float:
    """
    Outage of the strong user (failed SIC of x_m or failed own decoding).

    The event is Z_(n) < max(tau, theta * Y_I + beta). Imperfect SIC averages
    its probability over the Gamma(K, Omega_I) residual power; perfect SIC
    (or Omega_I = 0) is F_{Z_(n)}(max(tau, beta)).
    """
    thresholds = derive_thresholds(config, rho)
    if not thresholds.feasible_m:
        # gamma_{n->m} never reaches eps_m either
        return 1.0

    if thresholds.beta < thresholds.tau:
        logger.debug(
            f"beta={thresholds.beta:.3e} < tau={thresholds.tau:.3e} at rho={rho:g}: "
            "failed SIC of x_m dominates the low-interference region"
        )

    crule, lrule = rules_for(config)
    if config.sic_mode is SicMode.PERFECT or config.omega_I == 0:
        threshold = max(thresholds.tau, thresholds.beta)
        return float(sorted_cdf(threshold, config.n_index, config, crule))

    return residual_interference_average(
        config, thresholds.beta, thresholds.theta_coeff, crule, lrule, tau=thresholds.tau
    )


def _interference_split(config: SystemConfig, beta: float, theta_coeff: float,
                        tau: float) -> float:
    # residual power (in units of Omega_I) below which tau dominates theta * Y_I + beta
    if tau <= beta:
        return 0.0
    return (tau - beta) / (theta_coeff * config.omega_I)


def residual_interference_average(config: SystemConfig, beta: float, theta_coeff: float,
                                  crule: ChebyshevRule = None,
                                  lrule: LaguerreRule = None,
                                  tau: float = 0.0) -> float:
    """
    E[F_{Z_(n)}(max(tau, theta_coeff * Y_I + beta))] with Y_I ~ Gamma(K, Omega_I).

    Substituting t = y / Omega_I leaves a Gamma(K, 1) density. Below the
    split point t0 the integrand is the constant F(tau), weighted by the
    Gamma CDF at t0; above it t = t0 + s is integrated with Gauss-Laguerre
    nodes: e^{-t0} sum_l w_l (t0 + s_l)^{K-1} / (K-1)! F(...).
    """
    if crule is None or lrule is None:
        crule, lrule = rules_for(config)
    if theta_coeff * config.omega_I == 0:
        return float(sorted_cdf(max(tau, beta), config.n_index, config, crule))

    K = config.K
    t0 = _interference_split(config, beta, theta_coeff, tau)
    t = t0 + lrule.t
    z = theta_coeff * config.omega_I * t + beta
    density_factor = math.exp(-t0) * t ** (K - 1) / math.factorial(K - 1)
    values = sorted_cdf(z, config.n_index, config, crule)
    total = float(lrule.integrate(density_factor * values))

    if t0 > 0:
        head = float(sorted_cdf(tau, config.n_index, config, crule))
        total += head * float(gamma_cdf_unit(t0, K))
    return float(np.clip(total, 0.0, 1.0))


def residual_interference_average_oracle(config: SystemConfig, beta: float,
                                         theta_coeff: float, tau: float = 0.0,
                                         tol: float = 1e-9) -> float:
    """Same average as residual_interference_average, by adaptive integration"""
    crule, _ = rules_for(config)
    if theta_coeff * config.omega_I == 0:
        return float(sorted_cdf(max(tau, beta), config.n_index, config, crule))

    K = config.K
    norm = math.factorial(K - 1)
    t0 = _interference_split(config, beta, theta_coeff, tau)

    def integrand(t):
        z = theta_coeff * config.omega_I * t + beta
        return t ** (K - 1) * math.exp(-t) / norm * float(sorted_cdf(z, config.n_index, config, crule))

    total = adaptive_integrate(integrand, t0, math.inf, tol)
    if t0 > 0:
        total += float(sorted_cdf(tau, config.n_index, config, crule)) * float(gamma_cdf_unit(t0, K))
    return total


def throughput_from_outage(config: SystemConfig, p_m, p_n):
    """Delay-limited throughput (BPCU) from the two outage probabilities"""
    if config.throughput_pairing is RatePairing.AS_WRITTEN:
        return (1.0 - p_m) * config.R_n + (1.0 - p_n) * config.R_m
    return (1.0 - p_m) * config.R_m + (1.0 - p_n) * config.R_n


def throughput(config: SystemConfig, rho: float) -> float:
    return float(throughput_from_outage(config, outage_m(config, rho), outage_n(config, rho)))


def max_throughput(config: SystemConfig) -> float:
    return config.R_m + config.R_n

