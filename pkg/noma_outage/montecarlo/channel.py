"""
Channel realizations of the disk network: area-uniform user distances,
Rayleigh fading summed over K subcarriers, bounded path loss, ordered
effective gains and the residual-interference power left by imperfect SIC.
"""

from dataclasses import dataclass

import numpy as np

from noma_outage.models import SystemConfig


@dataclass(frozen=True)
class ChannelDraw:
    """
    One or more network realizations.

    Arrays carry an optional leading trial axis: ``d`` and ``Z`` have shape
    (..., M), ``Y_I`` has shape (...). Gains are sorted ascending, so
    Z[..., k-1] is the k-th weakest user.
    """

    d: np.ndarray
    Z: np.ndarray
    Y_I: np.ndarray

    @property
    def trials(self) -> int:
        return int(np.size(self.Y_I))


def _exponential_sum(rng: np.random.Generator, shape, K: int) -> np.ndarray:
    # inverse transform of unit-mean exponentials; 1 - U keeps the log argument in (0, 1]
    uniforms = 1.0 - rng.random(shape + (K,))
    return -np.log(uniforms).sum(axis=-1)


def sample_batch(rng: np.random.Generator, config: SystemConfig, size: int) -> ChannelDraw:
    """Draw ``size`` independent realizations (distances redrawn every trial)"""
    shape = (size, config.M)

    d = config.R_D * np.sqrt(rng.random(shape))
    fading = _exponential_sum(rng, shape, config.K)
    gains = config.eta * fading / (1.0 + d ** config.alpha)
    order = np.argsort(gains, axis=-1)
    Z = np.take_along_axis(gains, order, axis=-1)
    d = np.take_along_axis(d, order, axis=-1)

    if config.omega_I > 0:
        Y_I = config.omega_I * _exponential_sum(rng, (size,), config.K)
    else:
        Y_I = np.zeros(size)

    return ChannelDraw(d=d, Z=Z, Y_I=Y_I)


def sample_draw(rng: np.random.Generator, config: SystemConfig) -> ChannelDraw:
    """A single realization (no trial axis)"""
    batch = sample_batch(rng, config, 1)
    return ChannelDraw(d=batch.d[0], Z=batch.Z[0], Y_I=batch.Y_I[0])
