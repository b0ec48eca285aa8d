"""Result carriers for analytic, asymptotic and simulated curves."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# Rounding slack for probabilities assembled from quadrature sums
PROBABILITY_SLACK = 1e-9


@dataclass(frozen=True)
class OutageCurve:
    """
    Values of one quantity over an SNR grid.

    ``kind`` is 'outage' (probabilities) or 'throughput' (BPCU, bounded by
    ``upper``). Labels look like ``outage_n:pSIC:exact``.
    """

    snr_grid_db: np.ndarray
    values: np.ndarray
    label: str
    kind: str = "outage"
    upper: float = 1.0
    notes: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        grid = np.asarray(self.snr_grid_db, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, 'snr_grid_db', grid)
        object.__setattr__(self, 'values', values)

        if grid.shape != values.shape:
            raise ValueError(f"{self.label}: grid has {grid.size} points but {values.size} values")
        if grid.size > 1 and np.any(np.diff(grid) <= 0):
            raise ValueError(f"{self.label}: SNR grid must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"{self.label}: non-finite values")
        if np.any(values < -PROBABILITY_SLACK) or np.any(values > self.upper + PROBABILITY_SLACK):
            raise ValueError(f"{self.label}: values outside [0, {self.upper}]")

    @property
    def rho(self) -> np.ndarray:
        return np.power(10.0, self.snr_grid_db / 10.0)


@dataclass(frozen=True)
class AsymptoteResult:
    """High-SNR approximation with its claimed diversity order"""

    value: float
    diversity: int
    floor: bool = False
