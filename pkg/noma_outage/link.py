"""
Link-level algebra: SNR conversions, path-loss factor, decision thresholds
and the SINR expressions seen by the paired users.

All SINR helpers accept scalars or numpy arrays.
"""

import logging
import math

import numpy as np

from noma_outage.models import SicMode, SystemConfig, ThresholdSet

logger = logging.getLogger(__name__)

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def db_to_linear(value_db):
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value):
    return 10.0 * np.log10(np.asarray(value, dtype=float))


def eta_from_carrier(f_c: float) -> float:
    """Free-space reference factor (c / (4 pi f_c))^2 at carrier f_c (Hz)"""
    if not f_c > 0:
        raise ValueError(f"carrier frequency must be positive, got {f_c}")
    return (SPEED_OF_LIGHT / (4.0 * math.pi * f_c)) ** 2


def target_threshold(rate: float) -> float:
    """SINR threshold 2^R - 1 for a target rate R in BPCU"""
    return 2.0 ** rate - 1.0


def derive_thresholds(config: SystemConfig, rho: float) -> ThresholdSet:
    """
    Derive the gain thresholds of a configuration at transmit SNR ``rho``.

    tau is the gain below which x_m cannot be decoded; it only exists when
    a_m > eps_m * a_n. beta and theta_coeff bound the strong user's own
    decoding region: gamma_n <= eps_n  <=>  Z <= theta_coeff * Y_I + beta.
    """
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")

    eps_m = target_threshold(config.R_m)
    eps_n = target_threshold(config.R_n)
    margin = config.a_m - eps_m * config.a_n
    feasible_m = margin > 0

    if feasible_m:
        tau = eps_m / (rho * margin)
    else:
        tau = None
        logger.debug(
            f"Infeasible split: a_m={config.a_m} <= eps_m*a_n={eps_m * config.a_n}; "
            "user m is always in outage"
        )

    return ThresholdSet(
        rho=rho,
        eps_m=eps_m,
        eps_n=eps_n,
        tau=tau,
        beta=eps_n / (rho * config.a_n),
        theta_coeff=config.varpi * eps_n / config.a_n,
        feasible_m=feasible_m,
    )


def sinr_n_to_m(z_n, rho: float, a_m: float, a_n: float):
    """SINR at the strong user when decoding the weak user's symbol"""
    z_n = np.asarray(z_n, dtype=float)
    return rho * z_n * a_m / (rho * z_n * a_n + 1.0)


def sinr_n(z_n, y_i, rho: float, a_n: float, sic_mode: SicMode):
    """SINR of the strong user's own symbol after SIC"""
    varpi = 1.0 if sic_mode is SicMode.IMPERFECT else 0.0
    z_n = np.asarray(z_n, dtype=float)
    y_i = np.asarray(y_i, dtype=float)
    return rho * a_n * z_n / (varpi * rho * y_i + 1.0)


def sinr_m(z_m, rho: float, a_m: float, a_n: float):
    """SINR of the weak user; same-gain algebra as sinr_n_to_m"""
    return sinr_n_to_m(z_m, rho, a_m, a_n)
