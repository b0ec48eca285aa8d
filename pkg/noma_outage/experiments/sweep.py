"""
Evaluation of an ExperimentSpec: every selected curve over the SNR grid.
"""

import logging
from typing import Dict, List

import numpy as np
from pydantic import ValidationError

from noma_outage.analytic import (
    OutageCurve,
    asymptote_curve,
    max_throughput,
    outage_curve,
    throughput_curve,
    throughput_from_outage,
)
from noma_outage.config import Config
from noma_outage.exceptions import ConfigError, NomaOutageError
from noma_outage.link import db_to_linear
from noma_outage.models import SystemConfig
from noma_outage.montecarlo import SweepEstimates, estimate_outage_sweep
from noma_outage.experiments.spec import CurveSpec, ExperimentSpec

logger = logging.getLogger(__name__)


class SweepRunner:
    """
    Evaluates the curves of one experiment. Monte Carlo estimates are cached
    per system configuration so curves of the same config share draws.
    """

    def __init__(self, spec: ExperimentSpec, n_jobs: int = None, progress: bool = False):
        self.spec = spec
        self.n_jobs = n_jobs if n_jobs is not None else Config.get_worker_count()
        self.progress = progress
        self.grid = spec.grid.points()
        self.rhos = db_to_linear(self.grid)
        self._mc_cache: Dict[str, SweepEstimates] = {}

    def run(self) -> List[OutageCurve]:
        curve_specs = self.spec.curve_specs()
        logger.info(f"Running {self.spec.name}: {len(curve_specs)} curves on "
                    f"{self.grid.size} SNR points")
        return [self._evaluate(curve) for curve in curve_specs]

    def _evaluate(self, curve: CurveSpec) -> OutageCurve:
        try:
            config = curve.config_for(self.spec.base)
            if curve.method == "mc":
                result = self._monte_carlo(curve, config)
            else:
                result = self._analytic(curve, config)
        except ConfigError as exc:
            raise ConfigError(f"{curve.label}: {exc}", fields=exc.fields) from exc
        except ValidationError as exc:
            raise ConfigError(f"{curve.label}: invalid curve configuration: {exc.errors()[0]['msg']}",
                              fields=[str(e["loc"][0]) for e in exc.errors() if e["loc"]]) from exc
        except (NomaOutageError, ValueError) as exc:
            raise type(exc)(f"{curve.label}: {exc}") from exc

        logger.debug(f"{curve.label}: done")
        return result

    def _analytic(self, curve: CurveSpec, config: SystemConfig) -> OutageCurve:
        user = curve.quantity.rpartition("_")[2]
        if curve.quantity == "throughput" and curve.method == "exact":
            return throughput_curve(config, self.grid, curve.label, n_jobs=self.n_jobs)
        if curve.quantity in ("outage_m", "outage_n"):
            evaluator = outage_curve if curve.method == "exact" else asymptote_curve
            return evaluator(config, self.grid, user, curve.label, n_jobs=self.n_jobs)
        raise ValueError(f"no {curve.method} evaluator for {curve.quantity}")

    def _monte_carlo(self, curve: CurveSpec, config: SystemConfig) -> OutageCurve:
        key = config.model_dump_json()
        if key not in self._mc_cache:
            self._mc_cache[key] = estimate_outage_sweep(
                config, self.rhos, self.spec.trials, self.spec.seed,
                n_jobs=self.n_jobs, progress=self.progress,
            )
        sweep = self._mc_cache[key]

        p_m = np.array([e.p_hat for e in sweep.user_m])
        p_n = np.array([e.p_hat for e in sweep.user_n])
        if curve.quantity == "outage_m":
            values = p_m
        elif curve.quantity == "outage_n":
            values = p_n
        elif curve.quantity == "oma":
            values = np.array([e.p_hat for e in sweep.oma])
        elif curve.quantity == "throughput":
            values = throughput_from_outage(config, p_m, p_n)
        else:
            raise ValueError(f"no mc estimator for {curve.quantity}")

        kind, upper = self._kind_of(curve, config)
        return OutageCurve(snr_grid_db=self.grid, values=values, label=curve.label,
                           kind=kind, upper=upper)

    @staticmethod
    def _kind_of(curve: CurveSpec, config: SystemConfig):
        if curve.quantity == "throughput":
            return "throughput", max_throughput(config)
        return "outage", 1.0


def run_sweep(spec: ExperimentSpec, n_jobs: int = None, progress: bool = False) -> List[OutageCurve]:
    """Evaluate every selected curve of ``spec``, in preset order"""
    return SweepRunner(spec, n_jobs=n_jobs, progress=progress).run()
