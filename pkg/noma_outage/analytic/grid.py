"""Grid evaluators turning point functions into curves."""

import logging
from typing import Callable, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from noma_outage.link import db_to_linear
from noma_outage.models import SystemConfig
from noma_outage.analytic.asymptotics import asymptotic_outage_m, asymptotic_outage_n
from noma_outage.analytic.curves import OutageCurve
from noma_outage.analytic.outage import max_throughput, outage_m, outage_n, throughput

logger = logging.getLogger(__name__)

OUTAGE_POINTS = {"m": outage_m, "n": outage_n}
ASYMPTOTE_POINTS = {"m": asymptotic_outage_m, "n": asymptotic_outage_n}


def evaluate_on_grid(point_fn: Callable[[SystemConfig, float], float], config: SystemConfig,
                     snr_grid_db: Sequence[float], n_jobs: int = 1) -> np.ndarray:
    """Evaluate ``point_fn(config, rho)`` at each grid point, in grid order"""
    rhos = db_to_linear(snr_grid_db)
    values = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(point_fn)(config, float(rho)) for rho in rhos
    )
    return np.asarray(values, dtype=float)


def curve_from_points(point_fn: Callable[[SystemConfig, float], float], config: SystemConfig,
                      snr_grid_db: Sequence[float], label: str, n_jobs: int = 1,
                      kind: str = "outage", upper: float = 1.0) -> OutageCurve:
    values = evaluate_on_grid(point_fn, config, snr_grid_db, n_jobs)
    logger.debug(f"{label}: evaluated {values.size} grid points")
    return OutageCurve(snr_grid_db=np.asarray(snr_grid_db, dtype=float), values=values,
                       label=label, kind=kind, upper=upper)


def _user_point(table: dict, user: str):
    try:
        return table[user]
    except KeyError:
        raise ValueError(f"user must be 'm' or 'n', got {user!r}") from None


def outage_curve(config: SystemConfig, snr_grid_db: Sequence[float], user: str,
                 label: Optional[str] = None, n_jobs: int = 1) -> OutageCurve:
    point_fn = _user_point(OUTAGE_POINTS, user)
    return curve_from_points(point_fn, config, snr_grid_db, label or f"outage_{user}:exact",
                             n_jobs=n_jobs)


def asymptote_curve(config: SystemConfig, snr_grid_db: Sequence[float], user: str,
                    label: Optional[str] = None, n_jobs: int = 1) -> OutageCurve:
    """High-SNR approximation over the grid, saturated at 1 where the leading term exceeds it"""
    asymptote = _user_point(ASYMPTOTE_POINTS, user)

    def point_fn(cfg, rho):
        return min(asymptote(cfg, rho).value, 1.0)

    return curve_from_points(point_fn, config, snr_grid_db, label or f"outage_{user}:asymptotic",
                             n_jobs=n_jobs)


def throughput_curve(config: SystemConfig, snr_grid_db: Sequence[float],
                     label: Optional[str] = None, n_jobs: int = 1) -> OutageCurve:
    return curve_from_points(throughput, config, snr_grid_db, label or "throughput:exact",
                             n_jobs=n_jobs, kind="throughput", upper=max_throughput(config))
