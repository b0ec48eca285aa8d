"""
Quadrature rules for the disk average and the residual-interference average,
plus an adaptive-integration oracle used to check both.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import roots_laguerre

from noma_outage.config import Config
from noma_outage.exceptions import NonConvergenceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChebyshevRule:
    """
    Gauss-Chebyshev rule mapping the area-uniform disk average onto [-1, 1].

    ``b`` folds the Chebyshev weight, the Jacobian and the r dr area element
    together, so sum_u b_u f(r_u) approximates (2/R_D^2) int_0^R_D f(r) r dr.
    ``c`` holds the bounded path-loss factors 1 + r_u^alpha.
    """

    U: int
    theta: np.ndarray
    b: np.ndarray
    c: np.ndarray

    @property
    def disk_bias(self) -> float:
        """Deviation of the rule from integrating the constant 1 exactly"""
        return float(self.b.sum()) - 1.0


@dataclass(frozen=True)
class LaguerreRule:
    """Gauss-Laguerre nodes and weights for int_0^inf f(t) e^{-t} dt"""

    L: int
    t: np.ndarray
    w: np.ndarray

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Weighted sum over the node axis (axis 0) of pre-evaluated values"""
        return np.tensordot(self.w, values, axes=(0, 0))


def chebyshev_rule(U: int, R_D: float, alpha: float) -> ChebyshevRule:
    if U < 1:
        raise ValueError(f"Chebyshev rule needs U >= 1, got {U}")

    u = np.arange(1, U + 1)
    theta = np.cos((2 * u - 1) * np.pi / (2 * U))
    b = (np.pi / (2 * U)) * np.sqrt(1.0 - theta ** 2) * (theta + 1.0)
    c = 1.0 + (R_D * (theta + 1.0) / 2.0) ** alpha
    return ChebyshevRule(U=U, theta=theta, b=b, c=c)


def laguerre_rule(L: int) -> LaguerreRule:
    if not 1 <= L <= Config.MAX_LAGUERRE_NODES:
        raise ValueError(f"Laguerre rule needs 1 <= L <= {Config.MAX_LAGUERRE_NODES}, got {L}")

    t, w = roots_laguerre(L)
    return LaguerreRule(L=L, t=np.asarray(t, dtype=float), w=np.asarray(w, dtype=float))


def adaptive_integrate(f: Callable[[float], float], a: float, b: float,
                       tol: float = Config.INTEGRATION_TOLERANCE) -> float:
    """
    Adaptive Gauss-Kronrod integration of ``f`` over [a, b]; ``b`` may be
    ``math.inf`` (mapped onto a finite interval by QUADPACK).

    Raises NonConvergenceError when the subdivision limit is reached.
    """
    if not 1e-12 <= tol <= 1e-3:
        raise ValueError(f"tolerance must lie in [1e-12, 1e-3], got {tol}")

    value, abserr, info, *rest = integrate.quad(
        f, a, b,
        epsabs=1e-300,
        epsrel=tol,
        limit=Config.INTEGRATION_LIMIT,
        full_output=1,
    )
    if rest:
        # quad appends a diagnostic message when ier != 0
        raise NonConvergenceError(
            f"adaptive integration over [{a}, {b}] did not converge after "
            f"{info['last']} subintervals (error estimate {abserr:.3e}): {rest[0]}"
        )

    logger.debug(f"adaptive_integrate [{a}, {b}] -> {value:.12g} (+/- {abserr:.2e})")
    return float(value)
