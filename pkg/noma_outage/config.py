"""
Configuration settings for the NOMA outage toolkit
"""

import logging
import logging.config
import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Base configuration class"""

    # Project paths
    PROJECT_ROOT = Path(__file__).parent.parent.absolute()
    OUTPUT_DIR = PROJECT_ROOT / "results"

    # Network defaults (numerical-results setup)
    NUM_USERS = 3
    NUM_SUBCARRIERS = 2
    M_INDEX = 1
    N_INDEX = 2
    DISK_RADIUS = 2.0
    PATH_LOSS_EXPONENT = 2.0
    CARRIER_FREQUENCY = 1e9  # Hz
    POWER_M = 0.8
    POWER_N = 0.2
    TARGET_RATE = 0.01  # BPCU
    RESIDUAL_INTERFERENCE_DB = -20.0

    # Quadrature
    CHEBYSHEV_NODES = 15
    LAGUERRE_NODES = 64
    MAX_LAGUERRE_NODES = 256
    INTEGRATION_TOLERANCE = 1e-10
    INTEGRATION_LIMIT = 200  # subintervals for adaptive integration

    # Monte Carlo
    BATCH_SIZE = 2 ** 16
    DEFAULT_TRIALS = 10 ** 6
    MIN_TRIALS_WITH_MC = 10 ** 3
    DEFAULT_SEED = 20190101

    # Sweep grid (dB)
    SNR_START_DB = 0.0
    SNR_STOP_DB = 50.0
    SNR_STEP_DB = 5.0

    # Diversity-order fit
    DIVERSITY_WINDOW_DB = 10.0
    DIVERSITY_MIN_PROBABILITY = 1e-12

    # Output
    CSV_FLOAT_FORMAT = "%.9g"

    @staticmethod
    def get_worker_count() -> int:
        """Worker count for joblib pools (NOMA_OUTAGE_WORKERS, -1 = all cores)"""
        raw = os.getenv("NOMA_OUTAGE_WORKERS", "1")
        try:
            workers = int(raw)
        except ValueError:
            logging.getLogger(__name__).warning(
                f"Ignoring non-integer NOMA_OUTAGE_WORKERS={raw!r}; using 1 worker"
            )
            return 1
        return workers if workers != 0 else 1


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'noma_outage': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}

VERBOSITY_LEVELS = {
    0: 'WARNING',
    1: 'INFO',
    2: 'INFO',
    3: 'DEBUG',
}


def configure_logging(verbosity: int = 1, log_file: str = None):
    """Apply the LOGGING dictConfig at the level implied by a CLI verbosity"""
    settings = {
        **LOGGING,
        'handlers': dict(LOGGING['handlers']),
        'loggers': {name: dict(cfg) for name, cfg in LOGGING['loggers'].items()},
    }
    settings['loggers']['noma_outage']['level'] = VERBOSITY_LEVELS.get(verbosity, 'DEBUG')

    if log_file:
        settings['handlers']['file'] = {
            'level': 'INFO',
            'class': 'logging.FileHandler',
            'filename': log_file,
            'formatter': 'verbose',
        }
        settings['loggers']['noma_outage']['handlers'] = ['console', 'file']

    logging.config.dictConfig(settings)
